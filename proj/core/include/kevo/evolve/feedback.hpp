#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "kevo/evolve/eval.hpp"

namespace kevo::evolve {

inline constexpr int kHistoryDepth = 5;

struct HistoryEntry {
  int iteration = 0;
  std::string candidate_hash;
  EvalKind kind = EvalKind::mutator_fail;
  double score = 0.0;
  bool promoted = false;

  friend bool operator==(const HistoryEntry&, const HistoryEntry&) = default;
};

/// Everything the mutator sees before proposing candidate k. Built from
/// in-distribution results only; there is no field that could hold a
/// held-out measurement.
struct FeedbackPacket {
  std::string task_prompt_digest;
  int iteration = 0;
  std::string previous_hash;
  std::string previous_source;
  EvalResult previous_result;
  std::string incumbent_hash;
  std::string incumbent_source;
  double incumbent_score = 0.0;
  std::vector<HistoryEntry> history;  // oldest first, at most kHistoryDepth

  /// Canonical text handed to mutators.
  std::string serialize() const;
  nlohmann::json to_json() const;
};

FeedbackPacket build_feedback(const std::string& task_prompt_digest, int iteration,
                              const Candidate& previous, const EvalResult& previous_result,
                              const Candidate& incumbent, const EvalResult& incumbent_result,
                              const std::vector<HistoryEntry>& history,
                              int depth = kHistoryDepth);

nlohmann::json to_json(const EvalResult& r);
EvalResult eval_result_from_json(const nlohmann::json& j);

}  // namespace kevo::evolve
