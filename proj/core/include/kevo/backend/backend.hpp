#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "kevo/backend/candidate.hpp"
#include "kevo/backend/timing.hpp"
#include "kevo/taskbench/types.hpp"

namespace kevo::backend {

using taskbench::Buffers;
using taskbench::SizeConfig;
using taskbench::TaskSpec;

struct CompileOutcome {
  bool ok = false;
  /// Compiler output verbatim; non-empty whenever ok is false.
  std::string diagnostics;
  /// Backend-specific handle: a shared-object path, or an oracle plan id.
  std::string artifact;
  std::string candidate_hash;
};

struct RunOutcome {
  bool ok = false;
  /// Why the run failed (load error, ABI mismatch, watchdog, signal).
  std::string diagnostics;
  Buffers outputs;
  TimingSample timing;
};

/// Called once per repetition with the size being measured.
using RunObserver = std::function<void(const SizeConfig& size, bool timed, int index)>;

/// Compiles candidates and runs them at a size under the fixed timing
/// protocol. Failures of the candidate come back as values; exceptions are
/// reserved for harness misuse (ContractError) and broken toolchains.
class Backend {
 public:
  virtual ~Backend() = default;

  virtual std::string name() const = 0;
  virtual CompileOutcome compile(const Candidate& candidate) = 0;
  virtual RunOutcome run(const CompileOutcome& artifact, const TaskSpec& task,
                         const SizeConfig& size, const Buffers& inputs, std::uint64_t seed) = 0;
  /// Drops whatever `compile` kept alive for this artifact.
  virtual void release(const CompileOutcome& artifact) { (void)artifact; }

  void set_run_observer(RunObserver observer) { observer_ = std::move(observer); }

 protected:
  RepetitionObserver observer_for(const SizeConfig& size) const {
    if (!observer_) return {};
    return [this, size](bool timed, int index) { observer_(size, timed, index); };
  }

  RunObserver observer_;
};

}  // namespace kevo::backend
