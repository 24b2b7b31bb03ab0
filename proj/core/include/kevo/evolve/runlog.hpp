#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "kevo/evolve/eval.hpp"

namespace kevo::evolve {

struct IterationRecord {
  int k = 0;
  std::string candidate_hash;
  std::string parent_hash;
  backend::Origin origin = backend::Origin::seed;
  EvalResult result;
  bool promoted = false;
  std::string incumbent_hash;
  double best_score = 0.0;
  double propose_seconds = 0.0;
  double evaluate_seconds = 0.0;
  /// Serialised packet the mutator received for this iteration (empty at k = 0).
  std::string feedback;
};

struct FinalVerdict {
  std::string best_hash;
  double in_dist_score = 0.0;
  double seed_score = 0.0;
  /// S_T(best) / S_T(seed).
  double in_dist_speedup = 0.0;
  roofline::HeldOutVerdict held_out;
  /// Seed timing at the held-out size, for the speedup baseline.
  roofline::HeldOutVerdict seed_held_out;
  /// Seed elapsed / best elapsed at the held-out size; 0 if either run failed.
  double held_out_speedup = 0.0;
  std::string outcome;
};

struct RunLog {
  std::string task;
  std::string profile;
  std::string chip;
  std::string mutator_id;
  std::string backend;
  int iterations_requested = 0;
  std::uint64_t seed = 0;
  std::vector<IterationRecord> iterations;
  FinalVerdict final;
  /// candidate hash -> source text.
  std::map<std::string, std::string> sources;
};

/// "FAIL", "silent regression", "generalizes", "flat" or "tied".
std::string outcome_tag(bool held_out_chi, double in_dist_speedup, double held_out_speedup);

/// Speedups below this are treated as no improvement.
inline constexpr double kMeaningfulSpeedup = 1.05;

nlohmann::json summary_json(const RunLog& log);
std::string convergence_csv(const RunLog& log);

/// Writes runlog.jsonl (header, one record per iteration, final), sources/,
/// summary.json and convergence.csv under `dir`.
void write_runlog(const RunLog& log, const std::filesystem::path& dir);
RunLog read_runlog(const std::filesystem::path& dir);

/// One aligned line per run: task, in-dist x, held-out fraction, held-out x, outcome.
std::string summary_header();
std::string summary_row(const nlohmann::json& summary);

}  // namespace kevo::evolve
