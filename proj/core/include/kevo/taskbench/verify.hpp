#pragma once

#include <string>

#include "kevo/taskbench/types.hpp"

namespace kevo::taskbench {

struct Verdict {
  bool chi = false;
  /// max-abs error, max-norm error, differing byte count, or the covariance
  /// z-score for statistical tasks.
  double metric = 0.0;
  /// Mean z-score for statistical tasks; 0 otherwise.
  double secondary_metric = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

/// Applies the task's verification rule. Never throws on bad candidate data:
/// shape mismatches and non-finite values come back as chi = false.
Verdict verify(const TaskSpec& task, const SizeConfig& size, const Buffers& inputs,
               const Buffers& candidate, const Buffers& reference);

/// Sampling-noise-normalised moment errors of [K][d] samples against the
/// Gaussian with precision matrix A. Both are ~1 for exact iid draws.
struct MomentErrors {
  double mean_z = 0.0;
  double cov_z = 0.0;
};
MomentErrors hmc_moment_errors(const FieldBuffer& A, const FieldBuffer& samples);

}  // namespace kevo::taskbench
