#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kevo/evolve/eval.hpp"
#include "kevo/evolve/feedback.hpp"
#include "kevo/evolve/mutator.hpp"
#include "kevo/evolve/runlog.hpp"

namespace kevo::evolve {

/// The run cannot start: missing or failing seed, bad configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SweepConfig {
  int iterations = 10;
  int history_depth = kHistoryDepth;
  std::string profile;
  std::string chip;
};

using IterationCallback = std::function<void(const IterationRecord&)>;

/// (1+1) search: evaluates the task's seed (iteration 0), then for
/// k = 1..iterations asks the mutator for a candidate, evaluates it and
/// promotes on a strictly higher score. After the last iteration the
/// incumbent is measured once at the held-out size.
RunLog run_sweep(Evaluator& evaluator, Mutator& mutator, const TaskPrompt& prompt,
                 const SweepConfig& config, const IterationCallback& on_iteration = {});

/// Re-evaluates every logged candidate from the stored sources. Mutator
/// failures are carried over unchanged.
std::vector<EvalResult> replay(const RunLog& log, Evaluator& evaluator);

}  // namespace kevo::evolve
