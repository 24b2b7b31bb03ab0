#include "kevo/evolve/eval.hpp"

#include "kevo/taskbench/input.hpp"
#include "kevo/taskbench/reference.hpp"
#include "kevo/taskbench/verify.hpp"

namespace kevo::evolve {

using taskbench::ContractError;

std::string_view to_string(EvalKind k) {
  switch (k) {
    case EvalKind::compile_fail: return "compile_fail";
    case EvalKind::run_fail: return "run_fail";
    case EvalKind::correct_fail: return "correct_fail";
    case EvalKind::scored: return "scored";
    case EvalKind::mutator_fail: return "mutator_fail";
  }
  return "?";
}

EvalKind parse_eval_kind(std::string_view s) {
  for (auto k : {EvalKind::compile_fail, EvalKind::run_fail, EvalKind::correct_fail,
                 EvalKind::scored, EvalKind::mutator_fail}) {
    if (to_string(k) == s) return k;
  }
  throw ContractError("unknown evaluation kind '" + std::string(s) + "'");
}

EvalResult EvalResult::compile_fail(std::string diagnostics) {
  EvalResult r;
  r.kind = EvalKind::compile_fail;
  r.diagnostics = std::move(diagnostics);
  return r;
}

EvalResult EvalResult::run_fail(std::string diagnostics) {
  EvalResult r;
  r.kind = EvalKind::run_fail;
  r.diagnostics = std::move(diagnostics);
  return r;
}

EvalResult EvalResult::mutator_fail(std::string diagnostics) {
  EvalResult r;
  r.kind = EvalKind::mutator_fail;
  r.diagnostics = std::move(diagnostics);
  return r;
}

EvalResult EvalResult::correct_fail(const SizeConfig& size, double metric, double tolerance,
                                    std::string detail) {
  EvalResult r;
  r.kind = EvalKind::correct_fail;
  r.violating_size = size.label();
  r.error_metric = metric;
  r.tolerance = tolerance;
  r.diagnostics = std::move(detail);
  return r;
}

EvalResult EvalResult::scored(double score, std::vector<SizeEval> per_size) {
  EvalResult r;
  r.kind = EvalKind::scored;
  r.score = score;
  r.per_size = std::move(per_size);
  return r;
}

bool promote(const EvalResult& incumbent, const EvalResult& candidate) {
  return candidate.kind == EvalKind::scored && candidate.score > incumbent.effective_score();
}

Evaluator::Evaluator(const TaskSpec& task, backend::Backend& backend, roofline::ChipPeaks chip,
                     std::uint64_t seed)
    : task_(task), backend_(backend), chip_(std::move(chip)), seed_(seed) {
  task_.validate();
}

Evaluator::~Evaluator() {
  for (const auto& [_, a] : artifacts_) {
    if (a.ok) backend_.release(a);
  }
}

const Evaluator::SizeData& Evaluator::data_for(const SizeConfig& size) {
  const auto label = size.label();
  if (auto it = data_.find(label); it != data_.end()) return it->second;
  SizeData d;
  d.inputs = taskbench::generate_input(task_, size, seed_);
  d.reference = taskbench::reference_outputs(task_, size, d.inputs, seed_);
  return data_.emplace(label, std::move(d)).first->second;
}

const backend::CompileOutcome& Evaluator::compiled(const Candidate& candidate) {
  const auto hash = candidate.hash();
  if (auto it = artifacts_.find(hash); it != artifacts_.end()) return it->second;
  return artifacts_.emplace(hash, backend_.compile(candidate)).first->second;
}

EvalResult Evaluator::evaluate(const Candidate& candidate) {
  const auto& artifact = compiled(candidate);
  if (!artifact.ok) return EvalResult::compile_fail(artifact.diagnostics);

  std::vector<SizeEval> per_size;
  std::vector<roofline::GatedFraction> gated;
  for (const auto& size : task_.in_dist) {
    const auto& data = data_for(size);
    auto run = backend_.run(artifact, task_, size, data.inputs, seed_);
    if (!run.ok) return EvalResult::run_fail(run.diagnostics);
    const auto verdict = taskbench::verify(task_, size, data.inputs, run.outputs, data.reference);
    if (!verdict.chi) {
      return EvalResult::correct_fail(size, verdict.metric, verdict.tolerance, verdict.detail);
    }
    SizeEval e;
    e.size = size.label();
    e.error_metric = verdict.metric;
    e.tolerance = verdict.tolerance;
    e.median_seconds = run.timing.median_seconds;
    const auto achieved = roofline::achieved(task_, size, e.median_seconds);
    e.achieved_per_second = achieved.per_second;
    e.unit = achieved.unit();
    e.fraction = roofline::fraction(task_, size, chip_, e.median_seconds);
    gated.push_back({true, e.fraction});
    per_size.push_back(std::move(e));
  }
  return EvalResult::scored(roofline::in_dist_score(gated), std::move(per_size));
}

roofline::HeldOutVerdict Evaluator::evaluate_held_out(const Candidate& candidate) {
  roofline::HeldOutVerdict v;
  v.size = task_.held_out;
  const auto& artifact = compiled(candidate);
  if (!artifact.ok) {
    v.detail = "compile failure: " + artifact.diagnostics;
    return v;
  }
  const auto& data = data_for(task_.held_out);
  auto run = backend_.run(artifact, task_, task_.held_out, data.inputs, seed_);
  if (!run.ok) {
    v.detail = run.diagnostics;
    return v;
  }
  const auto verdict = taskbench::verify(task_, task_.held_out, data.inputs, run.outputs, data.reference);
  v.chi = verdict.chi;
  v.detail = verdict.detail;
  v.elapsed_seconds = run.timing.median_seconds;
  v.fraction = roofline::fraction(task_, task_.held_out, chip_, v.elapsed_seconds);
  v.phi = roofline::held_out_score(v.chi, v.fraction);
  return v;
}

}  // namespace kevo::evolve
