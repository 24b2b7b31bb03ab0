#pragma once

#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "kevo/backend/backend.hpp"
#include "kevo/roofline/roofline.hpp"

namespace kevo::backend {

/// Parsed "#kevo-oracle" script. One directive per line; size lists use the
/// canonical size labels ("N=64", "d=8,K=2048") separated by spaces.
///
///   slowdown <x> [sizes...]        x times slower at the listed sizes (all if none)
///   slowdown_unless <x> <sizes...> x times slower everywhere except the listed sizes
///   corrupt [sizes...]             wrong output at the listed sizes (all if none)
///   corrupt_unless <sizes...>      wrong output everywhere except the listed sizes
///   nan [sizes...]                 NaN output at the listed sizes (all if none)
///   compile_error <text>           compilation fails with <text> as diagnostics
///   run_error <text>               every run fails with <text>
///   hang                           every run hits the watchdog
///   note <text>                    ignored
struct OracleScript {
  struct SizeRule {
    std::set<std::string> sizes;
    bool invert = false;  // applies to sizes NOT listed
    double factor = 1.0;

    bool applies(const std::string& label) const;
  };

  std::vector<SizeRule> slowdowns;
  std::vector<SizeRule> corruptions;
  std::vector<SizeRule> nans;
  std::optional<std::string> compile_error;
  std::optional<std::string> run_error;
  bool hang = false;

  /// Throws ContractError with a line number on malformed input.
  static OracleScript parse(const std::string& source);

  double slowdown_at(const std::string& label) const;
};

/// Deterministic stand-in for a real machine. Outputs come from the reference
/// implementation (optionally corrupted); elapsed time is modelled as
/// work / (ceiling * nominal_efficiency) * slowdown.
class OracleBackend final : public Backend {
 public:
  /// Replaces the modelled per-repetition time (tests).
  using RepTime = std::function<double(const SizeConfig& size, bool timed, int index, double modelled)>;

  explicit OracleBackend(roofline::ChipPeaks chip, double nominal_efficiency = 0.25);

  std::string name() const override { return "oracle"; }
  CompileOutcome compile(const Candidate& candidate) override;
  RunOutcome run(const CompileOutcome& artifact, const TaskSpec& task, const SizeConfig& size,
                 const Buffers& inputs, std::uint64_t seed) override;
  void release(const CompileOutcome& artifact) override;

  void set_rep_time(RepTime fn) { rep_time_ = std::move(fn); }

  /// Completed runs (successful or not) per size label.
  int runs_at(const std::string& label) const;
  /// Completed runs of one candidate at a size label.
  int runs_at(const std::string& label, const std::string& candidate_hash) const;
  int total_runs() const;

  double modelled_seconds(const TaskSpec& task, const SizeConfig& size) const;

 private:
  const Buffers& reference_for(const TaskSpec& task, const SizeConfig& size, const Buffers& inputs,
                               std::uint64_t seed);

  roofline::ChipPeaks chip_;
  double efficiency_;
  RepTime rep_time_;
  mutable std::mutex mutex_;
  std::map<std::string, OracleScript> scripts_;
  std::map<std::string, int> runs_;
  std::map<std::pair<std::string, std::string>, int> candidate_runs_;
  std::map<std::string, Buffers> references_;
};

}  // namespace kevo::backend
