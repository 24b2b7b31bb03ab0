#include "kevo/taskbench/verify.hpp"

#include <cmath>
#include <cstring>
#include <limits>
#include <sstream>

#include "kevo/taskbench/registry.hpp"

namespace kevo::taskbench {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt_sci(double v) {
  std::ostringstream ss;
  ss.precision(3);
  ss << std::scientific << v;
  return ss.str();
}

Verdict fail(std::string detail, double metric = kInf) {
  Verdict v;
  v.chi = false;
  v.metric = metric;
  v.detail = std::move(detail);
  return v;
}

// Symmetric positive definite inverse by Cholesky, fp64.
std::vector<double> spd_inverse(std::span<const float> a, std::size_t d) {
  std::vector<double> L(d * d, 0.0);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double s = a[i * d + j];
      for (std::size_t k = 0; k < j; ++k) s -= L[i * d + k] * L[j * d + k];
      if (i == j) {
        if (!(s > 0.0)) throw ContractError("hmc: A is not positive definite");
        L[i * d + i] = std::sqrt(s);
      } else {
        L[i * d + j] = s / L[j * d + j];
      }
    }
  }
  // Solve A X = I column by column.
  std::vector<double> inv(d * d, 0.0);
  std::vector<double> y(d);
  for (std::size_t c = 0; c < d; ++c) {
    for (std::size_t i = 0; i < d; ++i) {
      double s = (i == c) ? 1.0 : 0.0;
      for (std::size_t k = 0; k < i; ++k) s -= L[i * d + k] * y[k];
      y[i] = s / L[i * d + i];
    }
    for (std::size_t ii = d; ii-- > 0;) {
      double s = y[ii];
      for (std::size_t k = ii + 1; k < d; ++k) s -= L[k * d + ii] * inv[k * d + c];
      inv[ii * d + c] = s / L[ii * d + ii];
    }
  }
  return inv;
}

struct FieldError {
  double max_err = 0.0;
  double ref_norm = 0.0;
  bool finite = true;
};

FieldError field_error(std::span<const float> cand, std::span<const float> ref, double period) {
  FieldError e;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    if (!std::isfinite(cand[i])) {
      e.finite = false;
      continue;
    }
    double diff = static_cast<double>(cand[i]) - ref[i];
    if (period > 0.0) diff -= period * std::nearbyint(diff / period);
    e.max_err = std::max(e.max_err, std::abs(diff));
    e.ref_norm = std::max(e.ref_norm, std::abs(static_cast<double>(ref[i])));
  }
  return e;
}

FieldError complex_error(std::span<const float> cand, std::span<const float> ref) {
  FieldError e;
  for (std::size_t i = 0; i + 1 < ref.size(); i += 2) {
    if (!std::isfinite(cand[i]) || !std::isfinite(cand[i + 1])) {
      e.finite = false;
      continue;
    }
    const double dr = static_cast<double>(cand[i]) - ref[i];
    const double di = static_cast<double>(cand[i + 1]) - ref[i + 1];
    e.max_err = std::max(e.max_err, std::hypot(dr, di));
    e.ref_norm = std::max(e.ref_norm, std::hypot(static_cast<double>(ref[i]), static_cast<double>(ref[i + 1])));
  }
  return e;
}

}  // namespace

MomentErrors hmc_moment_errors(const FieldBuffer& A, const FieldBuffer& samples) {
  const std::size_t d = A.extents().at(0);
  const std::size_t k = samples.count() / d;
  const auto sigma = spd_inverse(A.f32(), d);
  auto x = samples.f32();
  std::vector<double> mean(d, 0.0);
  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t i = 0; i < d; ++i) mean[i] += x[c * d + i];
  }
  for (auto& m : mean) m /= static_cast<double>(k);
  std::vector<double> cov(d * d, 0.0);
  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t i = 0; i < d; ++i) {
      const double xi = x[c * d + i] - mean[i];
      for (std::size_t j = 0; j < d; ++j) cov[i * d + j] += xi * (x[c * d + j] - mean[j]);
    }
  }
  const double norm = k > 1 ? 1.0 / static_cast<double>(k - 1) : 1.0;
  double trace = 0.0, fro2 = 0.0, err2 = 0.0, mean2 = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    trace += sigma[i * d + i];
    mean2 += mean[i] * mean[i];
    for (std::size_t j = 0; j < d; ++j) {
      const double s = sigma[i * d + j];
      fro2 += s * s;
      const double e = cov[i * d + j] * norm - s;
      err2 += e * e;
    }
  }
  const double kk = static_cast<double>(k);
  MomentErrors out;
  out.mean_z = std::sqrt(mean2) / std::sqrt(trace / kk);
  out.cov_z = std::sqrt(err2) / std::sqrt((fro2 + trace * trace) / kk);
  return out;
}

Verdict verify(const TaskSpec& task, const SizeConfig& size, const Buffers& inputs,
               const Buffers& candidate, const Buffers& reference) {
  const std::string where = "size " + size.label() + ": ";
  if (candidate.size() != reference.size()) return fail(where + "shape mismatch");
  for (std::size_t b = 0; b < reference.size(); ++b) {
    if (!candidate[b].same_shape(reference[b])) return fail(where + "shape mismatch");
  }
  const auto& rule = task.verification;

  switch (rule.kind) {
    case VerifyKind::byte_equality: {
      std::size_t diff = 0;
      for (std::size_t b = 0; b < reference.size(); ++b) {
        auto c = candidate[b].bytes();
        auto r = reference[b].bytes();
        for (std::size_t i = 0; i < r.size(); ++i) diff += c[i] != r[i] ? 1 : 0;
      }
      Verdict v;
      v.metric = static_cast<double>(diff);
      v.chi = diff == 0;
      v.detail = v.chi ? "exact" : where + std::to_string(diff) + " bytes differ from the reference";
      return v;
    }
    case VerifyKind::statistical_moments: {
      if (inputs.empty()) return fail(where + "missing target matrix");
      for (float x : candidate[0].f32()) {
        if (!std::isfinite(x)) return fail(where + "non-finite sample");
      }
      MomentErrors m;
      try {
        m = hmc_moment_errors(inputs[0], candidate[0]);
      } catch (const ContractError& e) {
        return fail(where + e.what());
      }
      Verdict v;
      v.metric = m.cov_z;
      v.secondary_metric = m.mean_z;
      v.tolerance = rule.stat_cov_tol;
      v.chi = m.cov_z <= rule.stat_cov_tol && m.mean_z <= rule.stat_mean_tol;
      v.detail = where + "covariance error " + fmt_sci(m.cov_z) + " sigma (tol " +
                 fmt_sci(rule.stat_cov_tol) + "), mean error " + fmt_sci(m.mean_z) +
                 " sigma (tol " + fmt_sci(rule.stat_mean_tol) + ")";
      return v;
    }
    case VerifyKind::max_abs_tolerance:
    case VerifyKind::relative_max_norm: {
      Verdict v;
      v.chi = true;
      double worst_ratio = -1.0;
      for (std::size_t b = 0; b < reference.size(); ++b) {
        double period = 0.0;
        if (task.id == TaskId::lj && b == 0) {
          period = lj_box(size.param("N"), task.constant("density"), task.constant("r_cut"));
        }
        const bool complex_norm = rule.kind == VerifyKind::relative_max_norm &&
                                  reference[b].kind() == ElemKind::c64;
        const auto e = complex_norm ? complex_error(candidate[b].f32(), reference[b].f32())
                                    : field_error(candidate[b].f32(), reference[b].f32(), period);
        const double tol = rule.abs_tol + rule.rel_tol * e.ref_norm;
        if (!e.finite) return fail(where + "non-finite output in buffer " + std::to_string(b));
        const double ratio = e.max_err / tol;
        if (ratio > worst_ratio) {
          worst_ratio = ratio;
          v.metric = e.max_err;
          v.tolerance = tol;
        }
        if (!(e.max_err <= tol)) v.chi = false;
      }
      const char* name = rule.kind == VerifyKind::relative_max_norm ? "max-norm error " : "max-abs error ";
      v.detail = where + name + fmt_sci(v.metric) + (v.chi ? " within tolerance " : " exceeds tolerance ") +
                 fmt_sci(v.tolerance);
      return v;
    }
  }
  return fail(where + "unknown verification rule");
}

}  // namespace kevo::taskbench
