#pragma once

#include <functional>
#include <span>
#include <vector>

namespace kevo::backend {

/// Fixed measurement protocol: untimed warmups, then timed repetitions whose
/// median is the reported elapsed time.
inline constexpr int kWarmupReps = 3;
inline constexpr int kTimedReps = 10;

struct TimingSample {
  int warmup_count = 0;
  int timed_count = 0;
  std::vector<double> per_rep_seconds;
  double median_seconds = 0.0;
};

/// Median of an even count is the mean of the two middle values.
double median(std::span<const double> values);

/// Observes each repetition as it completes; `timed` is false for warmups.
using RepetitionObserver = std::function<void(bool timed, int index)>;

/// Runs `rep` kWarmupReps + kTimedReps times. `rep` returns the seconds it
/// measured for itself (or throws to abort the protocol).
TimingSample run_protocol(const std::function<double(bool timed, int index)>& rep,
                          const RepetitionObserver& observer = {});

}  // namespace kevo::backend
