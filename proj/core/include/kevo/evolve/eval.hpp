#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "kevo/backend/backend.hpp"
#include "kevo/roofline/roofline.hpp"

namespace kevo::evolve {

using backend::Candidate;
using taskbench::SizeConfig;
using taskbench::TaskSpec;

enum class EvalKind { compile_fail, run_fail, correct_fail, scored, mutator_fail };

std::string_view to_string(EvalKind k);
EvalKind parse_eval_kind(std::string_view s);

/// One in-distribution size of a scored candidate.
struct SizeEval {
  std::string size;  // canonical label
  double error_metric = 0.0;
  double tolerance = 0.0;
  double median_seconds = 0.0;
  double achieved_per_second = 0.0;
  std::string unit;
  double fraction = 0.0;

  friend bool operator==(const SizeEval&, const SizeEval&) = default;
};

/// Outcome of evaluating a candidate at the in-distribution sizes. Only the
/// fields of its kind are populated:
///   compile_fail, run_fail, mutator_fail -> diagnostics
///   correct_fail -> violating_size, error_metric, tolerance, diagnostics (detail)
///   scored       -> score, per_size
struct EvalResult {
  EvalKind kind = EvalKind::mutator_fail;
  std::string diagnostics;
  std::string violating_size;
  double error_metric = 0.0;
  double tolerance = 0.0;
  double score = 0.0;
  std::vector<SizeEval> per_size;

  static EvalResult compile_fail(std::string diagnostics);
  static EvalResult run_fail(std::string diagnostics);
  static EvalResult mutator_fail(std::string diagnostics);
  static EvalResult correct_fail(const SizeConfig& size, double metric, double tolerance,
                                 std::string detail);
  static EvalResult scored(double score, std::vector<SizeEval> per_size);

  /// Score used for promotion: S_T when scored, 0 otherwise.
  double effective_score() const { return kind == EvalKind::scored ? score : 0.0; }

  friend bool operator==(const EvalResult&, const EvalResult&) = default;
};

/// Strict promotion: only a scored candidate with a strictly higher score
/// replaces the incumbent.
bool promote(const EvalResult& incumbent, const EvalResult& candidate);

/// Compile-run-verify-score pipeline over a task's sizes. Inputs and reference
/// outputs are generated once per size and cached.
class Evaluator {
 public:
  Evaluator(const TaskSpec& task, backend::Backend& backend, roofline::ChipPeaks chip,
            std::uint64_t seed);
  ~Evaluator();
  Evaluator(const Evaluator&) = delete;
  Evaluator& operator=(const Evaluator&) = delete;

  /// Evaluates the three in-distribution sizes in order, stopping at the
  /// first failure.
  EvalResult evaluate(const Candidate& candidate);

  /// Measures the candidate once at the held-out size.
  roofline::HeldOutVerdict evaluate_held_out(const Candidate& candidate);

  const TaskSpec& task() const { return task_; }
  const roofline::ChipPeaks& chip() const { return chip_; }
  std::uint64_t seed() const { return seed_; }
  backend::Backend& backend() { return backend_; }

 private:
  struct SizeData {
    taskbench::Buffers inputs;
    taskbench::Buffers reference;
  };
  const SizeData& data_for(const SizeConfig& size);
  const backend::CompileOutcome& compiled(const Candidate& candidate);

  const TaskSpec& task_;
  backend::Backend& backend_;
  roofline::ChipPeaks chip_;
  std::uint64_t seed_;
  std::map<std::string, SizeData> data_;
  std::map<std::string, backend::CompileOutcome> artifacts_;
};

}  // namespace kevo::evolve
