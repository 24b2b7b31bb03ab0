#include "kevo/evolve/sweep.hpp"

#include <chrono>

namespace kevo::evolve {
namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

RunLog run_sweep(Evaluator& evaluator, Mutator& mutator, const TaskPrompt& prompt,
                 const SweepConfig& config, const IterationCallback& on_iteration) {
  const auto& task = evaluator.task();
  if (task.seed_source.empty()) {
    throw ConfigError("task " + std::string(taskbench::to_string(task.id)) + " has no seed source");
  }
  if (config.iterations < 0) throw ConfigError("iteration count must be non-negative");

  RunLog log;
  log.task = std::string(taskbench::to_string(task.id));
  log.profile = config.profile;
  log.chip = config.chip.empty() ? evaluator.chip().name() : config.chip;
  log.mutator_id = mutator.id();
  log.backend = evaluator.backend().name();
  log.iterations_requested = config.iterations;
  log.seed = evaluator.seed();

  const auto seed = Candidate::seed(task.seed_source);
  auto t0 = std::chrono::steady_clock::now();
  const auto seed_result = evaluator.evaluate(seed);
  if (seed_result.kind != EvalKind::scored) {
    std::string why = std::string(to_string(seed_result.kind)) + ": " + seed_result.diagnostics;
    throw ConfigError("seed kernel for " + log.task + " does not pass evaluation (" + why + ")");
  }
  log.sources[seed.hash()] = seed.source;

  IterationRecord r0;
  r0.k = 0;
  r0.candidate_hash = seed.hash();
  r0.origin = backend::Origin::seed;
  r0.result = seed_result;
  r0.promoted = true;
  r0.incumbent_hash = seed.hash();
  r0.best_score = seed_result.score;
  r0.evaluate_seconds = seconds_since(t0);
  log.iterations.push_back(r0);
  if (on_iteration) on_iteration(r0);

  std::vector<HistoryEntry> history{{0, seed.hash(), seed_result.kind, seed_result.score, true}};
  Candidate incumbent = seed;
  EvalResult incumbent_result = seed_result;
  Candidate previous = seed;
  EvalResult previous_result = seed_result;
  const auto digest = prompt.digest();

  for (int k = 1; k <= config.iterations; ++k) {
    const auto packet = build_feedback(digest, k, previous, previous_result, incumbent,
                                       incumbent_result, history, config.history_depth);
    IterationRecord rec;
    rec.k = k;
    rec.feedback = packet.serialize();
    rec.parent_hash = incumbent.hash();
    rec.origin = backend::Origin::mutator;

    Candidate candidate;
    EvalResult result;
    t0 = std::chrono::steady_clock::now();
    try {
      candidate = Candidate::proposed(mutator.propose(prompt, packet), incumbent.hash(), k);
      rec.propose_seconds = seconds_since(t0);
      t0 = std::chrono::steady_clock::now();
      result = evaluator.evaluate(candidate);
      rec.evaluate_seconds = seconds_since(t0);
      log.sources[candidate.hash()] = candidate.source;
    } catch (const MutatorError& e) {
      rec.propose_seconds = seconds_since(t0);
      candidate = Candidate::proposed("", incumbent.hash(), k);
      result = EvalResult::mutator_fail(e.what());
    }
    rec.candidate_hash = candidate.hash();
    rec.result = result;
    rec.promoted = promote(incumbent_result, result);
    if (rec.promoted) {
      incumbent = candidate;
      incumbent_result = result;
    }
    rec.incumbent_hash = incumbent.hash();
    rec.best_score = incumbent_result.score;
    history.push_back({k, rec.candidate_hash, result.kind, result.effective_score(), rec.promoted});
    // A failed proposal has no source; the next packet keeps showing the
    // last real candidate's code together with the failure.
    if (result.kind == EvalKind::mutator_fail) {
      previous_result = result;
    } else {
      previous = candidate;
      previous_result = result;
    }
    log.iterations.push_back(rec);
    if (on_iteration) on_iteration(rec);
  }

  auto& fin = log.final;
  fin.best_hash = incumbent.hash();
  fin.in_dist_score = incumbent_result.score;
  fin.seed_score = seed_result.score;
  fin.in_dist_speedup = seed_result.score > 0.0 ? incumbent_result.score / seed_result.score : 0.0;
  fin.held_out = evaluator.evaluate_held_out(incumbent);
  fin.seed_held_out = incumbent.hash() == seed.hash() ? fin.held_out : evaluator.evaluate_held_out(seed);
  if (fin.held_out.elapsed_seconds > 0.0 && fin.seed_held_out.elapsed_seconds > 0.0) {
    fin.held_out_speedup = fin.seed_held_out.elapsed_seconds / fin.held_out.elapsed_seconds;
  }
  fin.outcome = outcome_tag(fin.held_out.chi, fin.in_dist_speedup, fin.held_out_speedup);
  return log;
}

std::vector<EvalResult> replay(const RunLog& log, Evaluator& evaluator) {
  std::vector<EvalResult> out;
  for (const auto& rec : log.iterations) {
    if (rec.result.kind == EvalKind::mutator_fail) {
      out.push_back(rec.result);
      continue;
    }
    auto it = log.sources.find(rec.candidate_hash);
    if (it == log.sources.end()) {
      throw taskbench::ContractError("replay: no stored source for candidate " + rec.candidate_hash);
    }
    out.push_back(evaluator.evaluate(rec.k == 0 ? Candidate::seed(it->second)
                                                : Candidate::proposed(it->second, rec.parent_hash, rec.k)));
  }
  return out;
}

}  // namespace kevo::evolve
