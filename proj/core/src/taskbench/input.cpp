#include "kevo/taskbench/input.hpp"

#include <cmath>
#include <numbers>

#include "kevo/abi.h"
#include "kevo/taskbench/reference.hpp"
#include "kevo/taskbench/registry.hpp"

namespace kevo::taskbench {
namespace {

// Independent streams per buffer so adding a buffer never perturbs another.
class Stream {
 public:
  Stream(std::uint32_t key, std::uint32_t id) : key_(key), id_(id) {}

  double uniform(std::uint64_t i) const {
    return kevo_unit(kevo_stream_hash(key_, id_, static_cast<std::uint32_t>(i),
                                      static_cast<std::uint32_t>(i >> 32)));
  }
  double symmetric(std::uint64_t i) const { return 2.0 * uniform(i) - 1.0; }

  /// Box-Muller pair from uniforms 2i and 2i+1.
  std::pair<double, double> normal_pair(std::uint64_t i) const {
    const double r = std::sqrt(-2.0 * std::log(uniform(2 * i)));
    const double th = 2.0 * std::numbers::pi * uniform(2 * i + 1);
    return {r * std::cos(th), r * std::sin(th)};
  }

 private:
  std::uint32_t key_;
  std::uint32_t id_;
};

std::size_t as_size(std::int64_t v) { return static_cast<std::size_t>(v); }

// Random orthogonal matrix by modified Gram-Schmidt over Gaussian columns.
std::vector<double> random_orthogonal(std::size_t d, const Stream& rng) {
  std::vector<double> q(d * d);
  for (std::size_t i = 0; i < d * d; ++i) q[i] = rng.normal_pair(i).first;
  for (std::size_t c = 0; c < d; ++c) {
    for (std::size_t prev = 0; prev < c; ++prev) {
      double dot = 0.0;
      for (std::size_t r = 0; r < d; ++r) dot += q[r * d + c] * q[r * d + prev];
      for (std::size_t r = 0; r < d; ++r) q[r * d + c] -= dot * q[r * d + prev];
    }
    double norm = 0.0;
    for (std::size_t r = 0; r < d; ++r) norm += q[r * d + c] * q[r * d + c];
    norm = std::sqrt(norm);
    for (std::size_t r = 0; r < d; ++r) q[r * d + c] /= norm;
  }
  return q;
}

}  // namespace

Buffers generate_input(const TaskSpec& task, const SizeConfig& size, std::uint64_t seed) {
  if (size.task != task.id) throw ContractError("size config does not belong to this task");
  size.validate();
  const std::uint32_t key = kevo_seed_key(seed) ^ (static_cast<std::uint32_t>(task.id) * 0x9E3779B9u);
  Stream s0(key, 0), s1(key, 1), s2(key, 2), s3(key, 3);

  switch (task.id) {
    case TaskId::saxpy: {
      const auto n = as_size(size.param("n"));
      FieldBuffer x(ElemKind::f32, {n}), y(ElemKind::f32, {n});
      auto xs = x.f32();
      auto ys = y.f32();
      for (std::size_t i = 0; i < n; ++i) {
        xs[i] = static_cast<float>(s0.symmetric(i));
        ys[i] = static_cast<float>(s1.symmetric(i));
      }
      return {std::move(x), std::move(y)};
    }
    case TaskId::heat2d: {
      const auto n = as_size(size.param("N"));
      FieldBuffer u(ElemKind::f32, {n, n});
      auto v = u.f32();
      for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<float>(s0.uniform(i));
      return {std::move(u)};
    }
    case TaskId::wave3d: {
      const auto n = as_size(size.param("N"));
      FieldBuffer cur(ElemKind::f32, {n, n, n});
      auto v = cur.f32();
      for (std::size_t k = 1; k + 1 < n; ++k) {
        for (std::size_t j = 1; j + 1 < n; ++j) {
          for (std::size_t i = 1; i + 1 < n; ++i) {
            const auto x = (k * n + j) * n + i;
            v[x] = static_cast<float>(s0.symmetric(x));
          }
        }
      }
      FieldBuffer prev = cur;
      return {std::move(prev), std::move(cur)};
    }
    case TaskId::nbody: {
      const auto n = as_size(size.param("N"));
      FieldBuffer pos(ElemKind::f32, {n, 3}), vel(ElemKind::f32, {n, 3}), mass(ElemKind::f32, {n});
      auto p = pos.f32();
      auto v = vel.f32();
      auto m = mass.f32();
      for (std::size_t i = 0; i < 3 * n; ++i) {
        p[i] = static_cast<float>(s0.uniform(i));
        v[i] = static_cast<float>(0.1 * s1.symmetric(i));
      }
      for (std::size_t i = 0; i < n; ++i) {
        m[i] = static_cast<float>((0.5 + s2.uniform(i)) / static_cast<double>(n));
      }
      return {std::move(pos), std::move(vel), std::move(mass)};
    }
    case TaskId::hmc: {
      const auto d = as_size(size.param("d"));
      const auto k = as_size(size.param("K"));
      const double lo = task.constant("lambda_min");
      const double hi = task.constant("lambda_max");
      const auto q = random_orthogonal(d, s0);
      std::vector<double> lambda(d);
      for (std::size_t i = 0; i < d; ++i) {
        const double t = d > 1 ? static_cast<double>(i) / static_cast<double>(d - 1) : 0.0;
        lambda[i] = lo * std::pow(hi / lo, t);
      }
      FieldBuffer A(ElemKind::f32, {d, d});
      auto a = A.f32();
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
          double acc = 0.0;
          for (std::size_t e = 0; e < d; ++e) acc += lambda[e] * (q[i * d + e] * q[j * d + e]);
          a[i * d + j] = static_cast<float>(acc);
        }
      }
      FieldBuffer q0(ElemKind::f32, {k, d});
      auto qs = q0.f32();
      for (std::size_t i = 0; i < k * d; ++i) qs[i] = static_cast<float>(s1.normal_pair(i).first);
      return {std::move(A), std::move(q0)};
    }
    case TaskId::lbm: {
      const auto n = as_size(size.param("N"));
      const std::size_t plane = n * n;
      FieldBuffer f(ElemKind::f32, {9, n, n});
      auto v = f.f32();
      for (std::size_t c = 0; c < plane; ++c) {
        const auto rho = static_cast<float>(1.0 + 0.05 * s0.symmetric(c));
        const auto ux = static_cast<float>(0.05 * s1.symmetric(c));
        const auto uy = static_cast<float>(0.05 * s2.symmetric(c));
        for (int k = 0; k < 9; ++k) v[k * plane + c] = lbm_equilibrium(k, rho, ux, uy);
      }
      return {std::move(f)};
    }
    case TaskId::ising: {
      const auto n = as_size(size.param("N"));
      FieldBuffer spins(ElemKind::i8, {n, n});
      auto v = spins.i8();
      for (std::size_t i = 0; i < v.size(); ++i) v[i] = s0.uniform(i) < 0.5 ? -1 : 1;
      return {std::move(spins)};
    }
    case TaskId::lj: {
      const auto n = as_size(size.param("N"));
      const double box = lj_box(size.param("N"), task.constant("density"), task.constant("r_cut"));
      auto side = static_cast<std::size_t>(std::ceil(std::cbrt(static_cast<double>(n)) - 1e-9));
      while (side * side * side < n) ++side;
      const double a = box / static_cast<double>(side);
      FieldBuffer pos(ElemKind::f32, {n, 3}), vel(ElemKind::f32, {n, 3});
      auto p = pos.f32();
      auto v = vel.f32();
      double mean[3] = {0, 0, 0};
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t cell[3] = {i % side, (i / side) % side, i / (side * side)};
        for (int c = 0; c < 3; ++c) {
          const double x = (static_cast<double>(cell[c]) + 0.5) * a +
                           kLjJitter * a * s0.symmetric(3 * i + c);
          p[3 * i + c] = static_cast<float>(x);
          const double vc = 0.5 * s1.symmetric(3 * i + c);
          v[3 * i + c] = static_cast<float>(vc);
          mean[c] += vc;
        }
      }
      for (std::size_t i = 0; i < n; ++i) {
        for (int c = 0; c < 3; ++c) {
          v[3 * i + c] -= static_cast<float>(mean[c] / static_cast<double>(n));
        }
      }
      return {std::move(pos), std::move(vel)};
    }
    case TaskId::gradshaf: {
      const auto n = as_size(size.param("N"));
      FieldBuffer psi(ElemKind::f32, {n, n});
      auto v = psi.f32();
      for (std::size_t j = 1; j + 1 < n; ++j) {
        for (std::size_t i = 1; i + 1 < n; ++i) {
          const double x = static_cast<double>(i) / static_cast<double>(n - 1);
          const double y = static_cast<double>(j) / static_cast<double>(n - 1);
          const double bump = std::sin(std::numbers::pi * x) * std::sin(std::numbers::pi * y);
          v[j * n + i] = static_cast<float>(0.1 * bump * (1.0 + 0.1 * s0.symmetric(j * n + i)));
        }
      }
      return {std::move(psi)};
    }
    case TaskId::fft3d: {
      const auto n = as_size(size.param("N"));
      FieldBuffer x(ElemKind::c64, {n, n, n});
      auto v = x.f32();
      for (std::size_t i = 0; i < n * n * n; ++i) {
        const auto [re, im] = s0.normal_pair(i);
        v[2 * i] = static_cast<float>(re);
        v[2 * i + 1] = static_cast<float>(im);
      }
      return {std::move(x)};
    }
  }
  throw ContractError("unsupported task");
}

}  // namespace kevo::taskbench
