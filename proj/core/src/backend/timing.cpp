#include "kevo/backend/timing.hpp"

#include <algorithm>

#include "kevo/taskbench/types.hpp"

namespace kevo::backend {

double median(std::span<const double> values) {
  if (values.empty()) throw taskbench::ContractError("median of an empty sample");
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

TimingSample run_protocol(const std::function<double(bool, int)>& rep,
                          const RepetitionObserver& observer) {
  TimingSample s;
  for (int i = 0; i < kWarmupReps; ++i) {
    rep(false, i);
    ++s.warmup_count;
    if (observer) observer(false, i);
  }
  for (int i = 0; i < kTimedReps; ++i) {
    s.per_rep_seconds.push_back(rep(true, i));
    ++s.timed_count;
    if (observer) observer(true, i);
  }
  s.median_seconds = median(s.per_rep_seconds);
  return s;
}

}  // namespace kevo::backend
