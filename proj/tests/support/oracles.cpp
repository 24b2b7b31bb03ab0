#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace kevo::oracle {
namespace {

int mod(int i, int n) { return ((i % n) + n) % n; }

std::uint32_t mix(std::uint32_t h) {
  h ^= h >> 16;
  h *= 0x85ebca6bu;
  h ^= h >> 13;
  h *= 0xc2b2ae35u;
  h ^= h >> 16;
  return h;
}

}  // namespace

std::vector<float> heat2d(std::vector<float> u, int nx, int ny, float alpha, int steps) {
  auto at = [nx](std::vector<float>& g, int i, int j) -> float& { return g[j * nx + i]; };
  for (int s = 0; s < steps; ++s) {
    std::vector<float> next = u;
    for (int j = 1; j < ny - 1; ++j) {
      for (int i = 1; i < nx - 1; ++i) {
        const float c = at(u, i, j);
        const float lap = at(u, i - 1, j) + at(u, i + 1, j) + at(u, i, j - 1) + at(u, i, j + 1) - 4.0f * c;
        at(next, i, j) = c + alpha * lap;
      }
    }
    u = std::move(next);
  }
  return u;
}

std::pair<std::vector<float>, std::vector<float>> wave3d(std::vector<float> prev,
                                                         std::vector<float> cur, int n,
                                                         float alpha, int steps) {
  auto idx = [n](int i, int j, int k) { return (k * n + j) * n + i; };
  for (int s = 0; s < steps; ++s) {
    std::vector<float> next = cur;
    for (int k = 1; k < n - 1; ++k) {
      for (int j = 1; j < n - 1; ++j) {
        for (int i = 1; i < n - 1; ++i) {
          const float c = cur[idx(i, j, k)];
          const float lap = cur[idx(i - 1, j, k)] + cur[idx(i + 1, j, k)] + cur[idx(i, j - 1, k)] +
                            cur[idx(i, j + 1, k)] + cur[idx(i, j, k - 1)] + cur[idx(i, j, k + 1)] -
                            6.0f * c;
          next[idx(i, j, k)] = 2.0f * c - prev[idx(i, j, k)] + alpha * lap;
        }
      }
    }
    prev = std::move(cur);
    cur = std::move(next);
  }
  return {prev, cur};
}

std::pair<std::vector<double>, std::vector<double>> nbody(std::vector<double> pos,
                                                          std::vector<double> vel,
                                                          const std::vector<double>& mass,
                                                          double G, double eps, double dt,
                                                          int steps) {
  const std::size_t n = mass.size();
  for (int s = 0; s < steps; ++s) {
    std::vector<double> acc(3 * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        double r[3];
        for (int a = 0; a < 3; ++a) r[a] = pos[3 * j + a] - pos[3 * i + a];
        const double d2 = r[0] * r[0] + r[1] * r[1] + r[2] * r[2] + eps * eps;
        for (int a = 0; a < 3; ++a) acc[3 * i + a] += G * mass[j] * r[a] / std::pow(d2, 1.5);
      }
    }
    for (std::size_t i = 0; i < 3 * n; ++i) {
      vel[i] += dt * acc[i];
      pos[i] += dt * vel[i];
    }
  }
  return {pos, vel};
}

std::vector<float> lbm(std::vector<float> f, int nx, int ny, float tau, int steps) {
  static constexpr int cx[9] = {0, 1, 0, -1, 0, 1, -1, -1, 1};
  static constexpr int cy[9] = {0, 0, 1, 0, -1, 1, 1, -1, -1};
  static constexpr float w[9] = {4.0f / 9,  1.0f / 9,  1.0f / 9,  1.0f / 9, 1.0f / 9,
                                 1.0f / 36, 1.0f / 36, 1.0f / 36, 1.0f / 36};
  const int plane = nx * ny;
  for (int s = 0; s < steps; ++s) {
    std::vector<float> streamed(f.size());
    for (int k = 0; k < 9; ++k) {
      for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
          streamed[k * plane + j * nx + i] = f[k * plane + mod(j - cy[k], ny) * nx + mod(i - cx[k], nx)];
        }
      }
    }
    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i < nx; ++i) {
        float rho = 0, mx = 0, my = 0;
        for (int k = 0; k < 9; ++k) {
          const float v = streamed[k * plane + j * nx + i];
          rho += v;
          mx += static_cast<float>(cx[k]) * v;
          my += static_cast<float>(cy[k]) * v;
        }
        const float ux = mx / rho, uy = my / rho;
        for (int k = 0; k < 9; ++k) {
          const float cu = static_cast<float>(cx[k]) * ux + static_cast<float>(cy[k]) * uy;
          const float feq = w[k] * rho * (1.0f + 3.0f * cu + 4.5f * cu * cu - 1.5f * (ux * ux + uy * uy));
          float& v = streamed[k * plane + j * nx + i];
          v = v - (v - feq) / tau;
        }
      }
    }
    f = std::move(streamed);
  }
  return f;
}

std::vector<std::int8_t> ising(std::vector<std::int8_t> s, int nx, int ny, float beta, float J,
                               int sweeps, std::uint64_t seed) {
  const auto lo = static_cast<std::uint32_t>(seed);
  const auto hi = static_cast<std::uint32_t>(seed >> 32);
  const std::uint32_t key = mix(lo ^ mix(hi));
  double p[5];
  for (int m = -4; m <= 4; m += 2) {
    const double e = std::exp(-2.0 * static_cast<double>(beta) * static_cast<double>(J) * m);
    p[(m + 4) / 2] = e < 1.0 ? e : 1.0;
  }
  for (int sweep = 0; sweep < sweeps; ++sweep) {
    for (int color = 0; color <= 1; ++color) {
      for (int site = 0; site < nx * ny; ++site) {
        const int i = site % nx, j = site / nx;
        if (((i + j) & 1) != color) continue;
        const int h = s[j * nx + mod(i - 1, nx)] + s[j * nx + mod(i + 1, nx)] +
                      s[mod(j - 1, ny) * nx + i] + s[mod(j + 1, ny) * nx + i];
        const std::uint32_t counter = static_cast<std::uint32_t>(site) ^
                                      (static_cast<std::uint32_t>(sweep) * 0x9E3779B9u) ^
                                      (static_cast<std::uint32_t>(color) * 0x85EBCA6Bu) ^ key;
        const double u = (static_cast<double>(mix(counter)) + 0.5) / 4294967296.0;
        if (u < p[(s[site] * h + 4) / 2]) s[site] = static_cast<std::int8_t>(-s[site]);
      }
    }
  }
  return s;
}

std::vector<double> lj_forces(const std::vector<double>& pos, double box, double r_cut) {
  const std::size_t n = pos.size() / 3;
  std::vector<double> f(pos.size(), 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      double d[3];
      for (int a = 0; a < 3; ++a) {
        d[a] = pos[3 * j + a] - pos[3 * i + a];
        d[a] -= box * std::nearbyint(d[a] / box);
      }
      const double r2 = d[0] * d[0] + d[1] * d[1] + d[2] * d[2];
      if (r2 >= r_cut * r_cut) continue;
      const double inv2 = 1.0 / r2;
      const double inv6 = inv2 * inv2 * inv2;
      // F_i = 24 (2 r^-12 - r^-6) / r^2 * (r_i - r_j)
      const double mag = 24.0 * (2.0 * inv6 * inv6 - inv6) * inv2;
      for (int a = 0; a < 3; ++a) f[3 * i + a] += mag * -d[a];
    }
  }
  return f;
}

std::vector<double> gradshaf(std::vector<double> psi, int nr, int nz, double r_min, double r_max,
                             double z_min, double z_max, double omega, double mu0, double p_axis,
                             int steps) {
  const double dr = (r_max - r_min) / (nr - 1);
  const double dz = (z_max - z_min) / (nz - 1);
  for (int s = 0; s < steps; ++s) {
    double axis = -INFINITY;
    for (int j = 1; j < nz - 1; ++j) {
      for (int i = 1; i < nr - 1; ++i) axis = std::max(axis, psi[j * nr + i]);
    }
    std::vector<double> next = psi;
    for (int j = 1; j < nz - 1; ++j) {
      for (int i = 1; i < nr - 1; ++i) {
        const double R = r_min + i * dr;
        const double aw = 1.0 / (dr * dr) + 1.0 / (2.0 * R * dr);
        const double ae = 1.0 / (dr * dr) - 1.0 / (2.0 * R * dr);
        const double an = 1.0 / (dz * dz);
        const double ac = -2.0 * (1.0 / (dr * dr) + 1.0 / (dz * dz));
        const double x = psi[j * nr + i] / axis;
        const double J = (x > 0.0 && x < 1.0) ? R * p_axis * 4.0 * x * (1.0 - x) : 0.0;
        const double op = aw * psi[j * nr + i - 1] + ae * psi[j * nr + i + 1] + an * psi[(j + 1) * nr + i] +
                          an * psi[(j - 1) * nr + i] + ac * psi[j * nr + i];
        next[j * nr + i] = psi[j * nr + i] + omega * (-mu0 * R * J - op) / ac;
      }
    }
    psi = std::move(next);
  }
  return psi;
}

std::vector<std::complex<double>> dft3d(const std::vector<std::complex<double>>& x, int n) {
  auto a = x;
  const int stride[3] = {1, n, n * n};
  for (int axis = 0; axis < 3; ++axis) {
    std::vector<std::complex<double>> b(a.size());
    for (int idx = 0; idx < n * n * n; ++idx) {
      const int t = (idx / stride[axis]) % n;
      const int base = idx - t * stride[axis];
      std::complex<double> acc = 0.0;
      for (int m = 0; m < n; ++m) {
        const double ang = -2.0 * std::numbers::pi * static_cast<double>(t) * m / n;
        acc += a[base + m * stride[axis]] * std::polar(1.0, ang);
      }
      b[idx] = acc;
    }
    a = std::move(b);
  }
  return a;
}

}  // namespace kevo::oracle
