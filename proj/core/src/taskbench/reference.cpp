#include "kevo/taskbench/reference.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "kevo/abi.h"
#include "kevo/taskbench/registry.hpp"

namespace kevo::taskbench {
namespace {

void require(bool ok, const char* what) {
  if (!ok) throw ContractError(what);
}

std::size_t wrap(std::ptrdiff_t i, std::size_t n) {
  const auto m = static_cast<std::ptrdiff_t>(n);
  return static_cast<std::size_t>(((i % m) + m) % m);
}

bool cholesky_ok(std::span<const float> A, std::size_t d) {
  std::vector<double> L(d * d, 0.0);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double s = A[i * d + j];
      for (std::size_t k = 0; k < j; ++k) s -= L[i * d + k] * L[j * d + k];
      if (i == j) {
        if (!(s > 0.0)) return false;
        L[i * d + i] = std::sqrt(s);
      } else {
        L[i * d + j] = s / L[j * d + j];
      }
    }
  }
  return true;
}

void matvec(std::span<const float> A, std::size_t d, const float* q, float* out) {
  for (std::size_t i = 0; i < d; ++i) {
    float acc = 0.0f;
    for (std::size_t j = 0; j < d; ++j) acc += A[i * d + j] * q[j];
    out[i] = acc;
  }
}

double half_dot(const float* a, const float* b, std::size_t d) {
  double s = 0.0;
  for (std::size_t i = 0; i < d; ++i) s += static_cast<double>(a[i]) * b[i];
  return 0.5 * s;
}

void fft_line(std::vector<std::complex<double>>& a) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = -2.0 * std::numbers::pi / static_cast<double>(len);
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < len / 2; ++k) {
        const std::complex<double> w(std::cos(ang * k), std::sin(ang * k));
        const auto u = a[i + k];
        const auto v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
      }
    }
  }
}

// One axis pass; stride selects x (1), y (N) or z (N*N).
void fft_axis(std::span<const float> in, std::span<float> out, std::size_t n, std::size_t stride) {
  std::vector<std::complex<double>> line(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      std::size_t base = 0;
      if (stride == 1) {
        base = (a * n + b) * n;  // a=z, b=y
      } else if (stride == n) {
        base = a * n * n + b;  // a=z, b=x
      } else {
        base = a * n + b;  // a=y, b=x
      }
      for (std::size_t t = 0; t < n; ++t) {
        const auto idx = 2 * (base + t * stride);
        line[t] = {in[idx], in[idx + 1]};
      }
      fft_line(line);
      for (std::size_t t = 0; t < n; ++t) {
        const auto idx = 2 * (base + t * stride);
        out[idx] = static_cast<float>(line[t].real());
        out[idx + 1] = static_cast<float>(line[t].imag());
      }
    }
  }
}

}  // namespace

FieldBuffer reference_saxpy(float a, const FieldBuffer& x, const FieldBuffer& y) {
  require(x.same_shape(y) && x.kind() == ElemKind::f32, "saxpy: x and y must be f32 of equal length");
  FieldBuffer out = y;
  auto o = out.f32();
  auto xs = x.f32();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] = a * xs[i] + o[i];
  return out;
}

FieldBuffer reference_heat2d(const FieldBuffer& u, float alpha, int steps) {
  require(u.kind() == ElemKind::f32 && u.extents().size() == 2, "heat2d: expects a 2D f32 grid");
  const auto ny = u.extents()[0];
  const auto nx = u.extents()[1];
  require(nx >= 3 && ny >= 3, "heat2d: grid smaller than 3x3");
  require(steps >= 0, "heat2d: negative step count");
  FieldBuffer cur = u;
  FieldBuffer nxt = u;
  for (int s = 0; s < steps; ++s) {
    auto c = cur.f32();
    auto o = nxt.f32();
    for (std::size_t j = 1; j + 1 < ny; ++j) {
      for (std::size_t i = 1; i + 1 < nx; ++i) {
        const auto k = j * nx + i;
        o[k] = c[k] + alpha * (c[k - 1] + c[k + 1] + c[k - nx] + c[k + nx] - 4.0f * c[k]);
      }
    }
    std::swap(cur, nxt);
  }
  return cur;
}

std::pair<FieldBuffer, FieldBuffer> reference_wave3d(const FieldBuffer& u_prev,
                                                     const FieldBuffer& u_curr, float alpha,
                                                     int steps) {
  require(u_prev.same_shape(u_curr) && u_prev.kind() == ElemKind::f32 &&
              u_prev.extents().size() == 3,
          "wave3d: expects two 3D f32 grids of identical extents");
  require(alpha < 1.0f / 3.0f, "wave3d: alpha must be below 1/3 (CFL)");
  const auto nz = u_prev.extents()[0];
  const auto ny = u_prev.extents()[1];
  const auto nx = u_prev.extents()[2];
  require(nx >= 3 && ny >= 3 && nz >= 3, "wave3d: grid smaller than 3^3");
  FieldBuffer prev = u_prev;
  FieldBuffer cur = u_curr;
  FieldBuffer nxt = u_curr;
  const std::size_t sy = nx;
  const std::size_t sz = nx * ny;
  for (int s = 0; s < steps; ++s) {
    auto p = prev.f32();
    auto c = cur.f32();
    auto o = nxt.f32();
    std::copy(c.begin(), c.end(), o.begin());
    for (std::size_t k = 1; k + 1 < nz; ++k) {
      for (std::size_t j = 1; j + 1 < ny; ++j) {
        for (std::size_t i = 1; i + 1 < nx; ++i) {
          const auto x = k * sz + j * sy + i;
          const float lap = c[x - 1] + c[x + 1] + c[x - sy] + c[x + sy] + c[x - sz] + c[x + sz] -
                            6.0f * c[x];
          o[x] = 2.0f * c[x] - p[x] + alpha * lap;
        }
      }
    }
    std::swap(prev, cur);
    std::swap(cur, nxt);
  }
  return {std::move(prev), std::move(cur)};
}

void nbody_accelerations(std::span<const float> pos, std::span<const float> mass, float G,
                         float eps, std::span<float> acc) {
  const std::size_t n = mass.size();
  const float eps2 = eps * eps;
  for (std::size_t i = 0; i < n; ++i) {
    float ax = 0.0f, ay = 0.0f, az = 0.0f;
    const float xi = pos[3 * i], yi = pos[3 * i + 1], zi = pos[3 * i + 2];
    for (std::size_t j = 0; j < n; ++j) {
      const float dx = pos[3 * j] - xi;
      const float dy = pos[3 * j + 1] - yi;
      const float dz = pos[3 * j + 2] - zi;
      const float r2 = dx * dx + dy * dy + dz * dz + eps2;
      const float inv = 1.0f / std::sqrt(r2);
      const float s = mass[j] * inv * inv * inv;
      ax += s * dx;
      ay += s * dy;
      az += s * dz;
    }
    acc[3 * i] = G * ax;
    acc[3 * i + 1] = G * ay;
    acc[3 * i + 2] = G * az;
  }
}

std::pair<FieldBuffer, FieldBuffer> reference_nbody(const FieldBuffer& pos, const FieldBuffer& vel,
                                                    const FieldBuffer& mass, float G, float eps,
                                                    float dt, int steps) {
  require(eps > 0.0f, "nbody: softening eps must be positive");
  const std::size_t n = mass.count();
  require(pos.count() == 3 * n && vel.count() == 3 * n, "nbody: pos/vel must be [N][3]");
  FieldBuffer p = pos;
  FieldBuffer v = vel;
  std::vector<float> acc(3 * n);
  for (int s = 0; s < steps; ++s) {
    nbody_accelerations(p.f32(), mass.f32(), G, eps, acc);
    auto pv = p.f32();
    auto vv = v.f32();
    for (std::size_t i = 0; i < 3 * n; ++i) {
      vv[i] += acc[i] * dt;
      pv[i] += vv[i] * dt;
    }
  }
  return {std::move(p), std::move(v)};
}

float hmc_momentum(std::uint32_t key, std::uint32_t chain, std::uint32_t step, std::uint32_t i) {
  const double u1 = kevo_unit(kevo_stream_hash(key, chain, step, 2 * i));
  const double u2 = kevo_unit(kevo_stream_hash(key, chain, step, 2 * i + 1));
  return static_cast<float>(std::sqrt(-2.0 * std::log(u1)) *
                            std::cos(2.0 * std::numbers::pi * u2));
}

double hmc_accept_uniform(std::uint32_t key, std::uint32_t chain, std::uint32_t step,
                          std::uint32_t d) {
  return kevo_unit(kevo_stream_hash(key, chain, step, 2 * d));
}

double hmc_trajectory(std::span<const float> A, std::size_t d, std::span<float> q,
                      std::span<float> p, float eps, int L) {
  require(L >= 1, "hmc: L must be >= 1");
  std::vector<float> g(d);
  matvec(A, d, q.data(), g.data());
  const double h0 = half_dot(q.data(), g.data(), d) + half_dot(p.data(), p.data(), d);
  const float half = 0.5f * eps;
  for (std::size_t i = 0; i < d; ++i) p[i] -= half * g[i];
  for (int l = 0; l < L; ++l) {
    for (std::size_t i = 0; i < d; ++i) q[i] += eps * p[i];
    matvec(A, d, q.data(), g.data());
    const float kick = (l + 1 < L) ? eps : half;
    for (std::size_t i = 0; i < d; ++i) p[i] -= kick * g[i];
  }
  const double h1 = half_dot(q.data(), g.data(), d) + half_dot(p.data(), p.data(), d);
  return h1 - h0;
}

FieldBuffer reference_hmc(const FieldBuffer& A, const FieldBuffer& q0, float eps, int L,
                          int n_steps, std::uint64_t seed, const HmcObserver& observer) {
  require(A.extents().size() == 2 && A.extents()[0] == A.extents()[1], "hmc: A must be d x d");
  const std::size_t d = A.extents()[0];
  require(q0.extents().size() == 2 && q0.extents()[1] == d, "hmc: q0 must be [K][d]");
  require(L >= 1, "hmc: L must be >= 1");
  require(cholesky_ok(A.f32(), d), "hmc: A is not symmetric positive definite");
  const std::size_t chains = q0.extents()[0];
  const std::uint32_t key = kevo_seed_key(seed);
  auto a = A.f32();
  FieldBuffer out = q0;
  auto states = out.f32();
  std::vector<float> q(d), p(d);
  for (int t = 0; t < n_steps; ++t) {
    for (std::size_t c = 0; c < chains; ++c) {
      float* cur = states.data() + c * d;
      std::copy(cur, cur + d, q.begin());
      for (std::size_t i = 0; i < d; ++i) {
        p[i] = hmc_momentum(key, static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(t),
                            static_cast<std::uint32_t>(i));
      }
      const double dh = hmc_trajectory(a, d, q, p, eps, L);
      const double u = hmc_accept_uniform(key, static_cast<std::uint32_t>(c),
                                          static_cast<std::uint32_t>(t),
                                          static_cast<std::uint32_t>(d));
      if (std::log(u) < -dh) std::copy(q.begin(), q.end(), cur);
    }
    if (observer) observer(t, states);
  }
  return out;
}

float lbm_equilibrium(int k, float rho, float ux, float uy) {
  const float cu = static_cast<float>(kLbmCx[k]) * ux + static_cast<float>(kLbmCy[k]) * uy;
  const float usq = ux * ux + uy * uy;
  return kLbmW[k] * rho * (1.0f + 3.0f * cu + 4.5f * cu * cu - 1.5f * usq);
}

FieldBuffer reference_lbm(const FieldBuffer& f, float tau, int steps) {
  require(tau > 0.5f, "lbm: tau must exceed 0.5");
  require(f.kind() == ElemKind::f32 && f.extents().size() == 3 && f.extents()[0] == 9,
          "lbm: expects f32 [9][ny][nx]");
  const auto ny = f.extents()[1];
  const auto nx = f.extents()[2];
  const std::size_t plane = nx * ny;
  const float inv_tau = 1.0f / tau;
  FieldBuffer cur = f;
  FieldBuffer nxt = f;
  std::array<float, 9> fs{};
  for (int s = 0; s < steps; ++s) {
    auto in = cur.f32();
    auto out = nxt.f32();
    for (std::size_t j = 0; j < ny; ++j) {
      for (std::size_t i = 0; i < nx; ++i) {
        float rho = 0.0f, jx = 0.0f, jy = 0.0f;
        for (int k = 0; k < 9; ++k) {
          const auto si = wrap(static_cast<std::ptrdiff_t>(i) - kLbmCx[k], nx);
          const auto sj = wrap(static_cast<std::ptrdiff_t>(j) - kLbmCy[k], ny);
          fs[k] = in[k * plane + sj * nx + si];
          rho += fs[k];
          jx += static_cast<float>(kLbmCx[k]) * fs[k];
          jy += static_cast<float>(kLbmCy[k]) * fs[k];
        }
        const float ux = jx / rho;
        const float uy = jy / rho;
        for (int k = 0; k < 9; ++k) {
          const float feq = lbm_equilibrium(k, rho, ux, uy);
          out[k * plane + j * nx + i] = fs[k] - inv_tau * (fs[k] - feq);
        }
      }
    }
    std::swap(cur, nxt);
  }
  return cur;
}

std::array<double, 5> ising_accept_table(float beta, float J) {
  std::array<double, 5> table{};
  for (int idx = 0; idx < 5; ++idx) {
    const int m = 2 * idx - 4;
    table[idx] = std::min(1.0, std::exp(-2.0 * static_cast<double>(beta) * J * m));
  }
  return table;
}

FieldBuffer reference_ising(const FieldBuffer& spins, float beta, float J, int sweeps,
                            std::uint64_t seed) {
  require(spins.kind() == ElemKind::i8 && spins.extents().size() == 2, "ising: expects i8 [ny][nx]");
  const auto ny = spins.extents()[0];
  const auto nx = spins.extents()[1];
  require(nx % 2 == 0 && ny % 2 == 0, "ising: lattice extents must be even");
  const auto table = ising_accept_table(beta, J);
  const std::uint32_t key = kevo_seed_key(seed);
  FieldBuffer out = spins;
  auto s = out.i8();
  for (int sweep = 0; sweep < sweeps; ++sweep) {
    for (std::uint32_t color = 0; color < 2; ++color) {
      for (std::size_t j = 0; j < ny; ++j) {
        const std::size_t up = (j + 1) % ny, down = (j + ny - 1) % ny;
        for (std::size_t i = (j + color) % 2; i < nx; i += 2) {
          const std::size_t right = (i + 1) % nx, left = (i + nx - 1) % nx;
          const int h = s[j * nx + left] + s[j * nx + right] + s[up * nx + i] + s[down * nx + i];
          const int m = s[j * nx + i] * h;
          const auto site = static_cast<std::uint32_t>(j * nx + i);
          const double u = kevo_unit(
              kevo_fmix32(kevo_ising_counter(site, static_cast<std::uint32_t>(sweep), color, key)));
          if (u < table[(m + 4) / 2]) s[j * nx + i] = static_cast<std::int8_t>(-s[j * nx + i]);
        }
      }
    }
  }
  return out;
}

template <class Real>
std::vector<Real> lj_cell_forces(std::span<const Real> pos, Real box, Real r_cut, int capacity) {
  const std::size_t n = pos.size() / 3;
  const auto nc = static_cast<std::size_t>(lj_cells_per_dim(box, r_cut));
  const Real edge = box / static_cast<Real>(nc);
  std::vector<std::uint32_t> count(nc * nc * nc, 0);
  std::vector<std::uint32_t> list(nc * nc * nc * static_cast<std::size_t>(capacity));
  std::vector<std::size_t> cell_of(n);
  auto cell_coord = [&](Real x) {
    auto c = static_cast<std::ptrdiff_t>(std::floor(x / edge));
    return static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(c, 0, static_cast<std::ptrdiff_t>(nc) - 1));
  };
  for (std::size_t i = 0; i < n; ++i) {
    const auto cx = cell_coord(pos[3 * i]);
    const auto cy = cell_coord(pos[3 * i + 1]);
    const auto cz = cell_coord(pos[3 * i + 2]);
    const auto c = (cz * nc + cy) * nc + cx;
    cell_of[i] = c;
    const auto slot = count[c]++;
    if (slot >= static_cast<std::uint32_t>(capacity)) {
      throw ContractError("lj: cell occupancy exceeds capacity " + std::to_string(capacity));
    }
    list[c * capacity + slot] = static_cast<std::uint32_t>(i);
  }
  const Real rc2 = r_cut * r_cut;
  std::vector<Real> force(3 * n, Real(0));
  std::vector<std::uint32_t> neigh;
  for (std::size_t i = 0; i < n; ++i) {
    const auto c = cell_of[i];
    const auto cx = c % nc, cy = (c / nc) % nc, cz = c / (nc * nc);
    neigh.clear();
    for (int dz = -1; dz <= 1; ++dz) {
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          const auto ox = wrap(static_cast<std::ptrdiff_t>(cx) + dx, nc);
          const auto oy = wrap(static_cast<std::ptrdiff_t>(cy) + dy, nc);
          const auto oz = wrap(static_cast<std::ptrdiff_t>(cz) + dz, nc);
          const auto oc = (oz * nc + oy) * nc + ox;
          for (std::uint32_t s = 0; s < count[oc]; ++s) neigh.push_back(list[oc * capacity + s]);
        }
      }
    }
    std::sort(neigh.begin(), neigh.end());
    Real fx = 0, fy = 0, fz = 0;
    for (auto j : neigh) {
      if (j == i) continue;
      Real d[3];
      for (int a = 0; a < 3; ++a) {
        Real v = pos[3 * j + a] - pos[3 * i + a];
        v -= box * std::nearbyint(v / box);
        d[a] = v;
      }
      const Real r2 = d[0] * d[0] + d[1] * d[1] + d[2] * d[2];
      if (r2 < rc2) {
        const Real inv2 = Real(1) / r2;
        const Real inv6 = inv2 * inv2 * inv2;
        const Real coef = Real(-24) * (Real(2) * inv6 * inv6 - inv6) * inv2;
        fx += coef * d[0];
        fy += coef * d[1];
        fz += coef * d[2];
      }
    }
    force[3 * i] = fx;
    force[3 * i + 1] = fy;
    force[3 * i + 2] = fz;
  }
  return force;
}

template std::vector<float> lj_cell_forces<float>(std::span<const float>, float, float, int);
template std::vector<double> lj_cell_forces<double>(std::span<const double>, double, double, int);

std::pair<FieldBuffer, FieldBuffer> reference_lj(const FieldBuffer& pos, const FieldBuffer& vel,
                                                 float box, float dt, float r_cut, int steps) {
  require(pos.same_shape(vel) && pos.count() % 3 == 0, "lj: pos/vel must be [N][3]");
  require(box >= 3.0f * r_cut, "lj: box must be at least 3*r_cut");
  FieldBuffer p = pos;
  FieldBuffer v = vel;
  for (int s = 0; s < steps; ++s) {
    const auto force = lj_cell_forces<float>(p.f32(), box, r_cut, kLjCellCapacity);
    auto pv = p.f32();
    auto vv = v.f32();
    for (std::size_t i = 0; i < pv.size(); ++i) {
      vv[i] += force[i] * dt;
      float x = pv[i] + vv[i] * dt;
      x -= box * std::floor(x / box);
      pv[i] = x;
    }
  }
  return {std::move(p), std::move(v)};
}

FieldBuffer reference_gradshaf(const FieldBuffer& psi, const GradShafGeometry& geom, float omega,
                               float mu0, float p_axis, int picard_steps) {
  require(psi.kind() == ElemKind::f32 && psi.extents().size() == 2, "gradshaf: expects f32 [nz][nr]");
  const auto nz = psi.extents()[0];
  const auto nr = psi.extents()[1];
  require(nr >= 3 && nz >= 3, "gradshaf: grid smaller than 3x3");
  require(geom.r_min > 0.0 && geom.r_max > geom.r_min && geom.z_max > geom.z_min,
          "gradshaf: R must be strictly positive and the domain non-empty");
  const double dr = (geom.r_max - geom.r_min) / static_cast<double>(nr - 1);
  const double dz = (geom.z_max - geom.z_min) / static_cast<double>(nz - 1);
  const auto a_ns = static_cast<float>(1.0 / (dz * dz));
  const auto a_c = static_cast<float>(-2.0 * (1.0 / (dr * dr) + 1.0 / (dz * dz)));
  std::vector<float> radius(nr), a_w(nr), a_e(nr);
  for (std::size_t i = 0; i < nr; ++i) {
    const double r = geom.r_min + static_cast<double>(i) * dr;
    radius[i] = static_cast<float>(r);
    a_w[i] = static_cast<float>(1.0 / (dr * dr) + 1.0 / (2.0 * r * dr));
    a_e[i] = static_cast<float>(1.0 / (dr * dr) - 1.0 / (2.0 * r * dr));
  }
  FieldBuffer cur = psi;
  FieldBuffer nxt = psi;
  for (int s = 0; s < picard_steps; ++s) {
    auto c = cur.f32();
    auto o = nxt.f32();
    float axis = -std::numeric_limits<float>::infinity();
    for (std::size_t j = 1; j + 1 < nz; ++j) {
      for (std::size_t i = 1; i + 1 < nr; ++i) axis = std::max(axis, c[j * nr + i]);
    }
    if (!(axis > 0.0f)) {
      auto bad = cur.f32();
      std::fill(bad.begin(), bad.end(), std::numeric_limits<float>::quiet_NaN());
      return cur;
    }
    for (std::size_t j = 1; j + 1 < nz; ++j) {
      for (std::size_t i = 1; i + 1 < nr; ++i) {
        const auto k = j * nr + i;
        const float pn = c[k] / axis;
        const float r = radius[i];
        const float src = (pn > 0.0f && pn < 1.0f) ? r * p_axis * 4.0f * pn * (1.0f - pn) : 0.0f;
        const float lap = a_w[i] * c[k - 1] + a_e[i] * c[k + 1] + a_ns * c[k + nr] +
                          a_ns * c[k - nr] + a_c * c[k];
        o[k] = c[k] + omega * (-mu0 * r * src - lap) / a_c;
      }
    }
    std::swap(cur, nxt);
  }
  return cur;
}

FieldBuffer reference_fft3d(const FieldBuffer& x) {
  require(x.kind() == ElemKind::c64 && x.extents().size() == 3, "fft3d: expects c64 [N][N][N]");
  const auto n = x.extents()[0];
  require(x.extents()[1] == n && x.extents()[2] == n, "fft3d: grid must be a cube");
  require(n >= 1 && (n & (n - 1)) == 0, "fft3d: N must be a power of two");
  FieldBuffer a = x;
  FieldBuffer b = x;
  fft_axis(a.f32(), b.f32(), n, 1);
  fft_axis(b.f32(), a.f32(), n, n);
  fft_axis(a.f32(), b.f32(), n, n * n);
  return b;
}

Buffers reference_outputs(const TaskSpec& task, const SizeConfig& size, const Buffers& in,
                          std::uint64_t seed) {
  auto c = [&](const char* name) { return static_cast<float>(task.constant(name)); };
  const int steps = size.steps;
  switch (task.id) {
    case TaskId::saxpy: return {reference_saxpy(c("a"), in.at(0), in.at(1))};
    case TaskId::heat2d: return {reference_heat2d(in.at(0), c("alpha"), steps)};
    case TaskId::wave3d: {
      auto [a, b] = reference_wave3d(in.at(0), in.at(1), c("alpha"), steps);
      return {std::move(a), std::move(b)};
    }
    case TaskId::nbody: {
      auto [p, v] = reference_nbody(in.at(0), in.at(1), in.at(2), c("G"), c("eps"), c("dt"), steps);
      return {std::move(p), std::move(v)};
    }
    case TaskId::hmc:
      return {reference_hmc(in.at(0), in.at(1), c("eps"), static_cast<int>(task.constant("L")),
                            steps, seed)};
    case TaskId::lbm: return {reference_lbm(in.at(0), c("tau"), steps)};
    case TaskId::ising: return {reference_ising(in.at(0), c("beta"), c("J"), steps, seed)};
    case TaskId::lj: {
      const auto box = static_cast<float>(
          lj_box(size.param("N"), task.constant("density"), task.constant("r_cut")));
      auto [p, v] = reference_lj(in.at(0), in.at(1), box, c("dt"), c("r_cut"), steps);
      return {std::move(p), std::move(v)};
    }
    case TaskId::gradshaf: {
      GradShafGeometry g{task.constant("r_min"), task.constant("r_max"), task.constant("z_min"),
                         task.constant("z_max")};
      return {reference_gradshaf(in.at(0), g, c("omega"), c("mu0"), c("p_axis"), steps)};
    }
    case TaskId::fft3d: return {reference_fft3d(in.at(0))};
  }
  throw ContractError("unregistered task");
}

}  // namespace kevo::taskbench
