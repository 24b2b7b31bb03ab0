#include "kevo/evolve/feedback.hpp"

#include <cstdio>
#include <sstream>

namespace kevo::evolve {
namespace {

std::string num(double v, const char* fmt = "%.4g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

void describe(std::ostringstream& s, const EvalResult& r) {
  s << "result: " << to_string(r.kind) << "\n";
  switch (r.kind) {
    case EvalKind::scored:
      s << "score (geometric-mean fraction of ceiling): " << num(r.score, "%.6g") << "\n";
      for (const auto& e : r.per_size) {
        s << "  size " << e.size << ": correct (error " << num(e.error_metric, "%.3e")
          << ", tol " << num(e.tolerance, "%.3e") << "), median " << num(e.median_seconds * 1e3)
          << " ms, " << num(e.achieved_per_second * 1e-9) << " " << e.unit << ", "
          << roofline::format_percent(e.fraction) << " of ceiling\n";
      }
      break;
    case EvalKind::correct_fail:
      s << "incorrect at size " << r.violating_size << ": error " << num(r.error_metric, "%.3e")
        << " vs tolerance " << num(r.tolerance, "%.3e") << "\n"
        << r.diagnostics << "\n";
      break;
    default:
      s << "diagnostics:\n" << r.diagnostics;
      if (!r.diagnostics.empty() && r.diagnostics.back() != '\n') s << "\n";
      break;
  }
}

}  // namespace

FeedbackPacket build_feedback(const std::string& task_prompt_digest, int iteration,
                              const Candidate& previous, const EvalResult& previous_result,
                              const Candidate& incumbent, const EvalResult& incumbent_result,
                              const std::vector<HistoryEntry>& history, int depth) {
  FeedbackPacket p;
  p.task_prompt_digest = task_prompt_digest;
  p.iteration = iteration;
  p.previous_hash = previous.hash();
  p.previous_source = previous.source;
  p.previous_result = previous_result;
  p.incumbent_hash = incumbent.hash();
  p.incumbent_source = incumbent.source;
  p.incumbent_score = incumbent_result.effective_score();
  const auto n = static_cast<std::ptrdiff_t>(history.size());
  const auto first = std::max<std::ptrdiff_t>(0, n - depth);
  p.history.assign(history.begin() + first, history.end());
  return p;
}

std::string FeedbackPacket::serialize() const {
  std::ostringstream s;
  s << "=== feedback for iteration " << iteration << " (prompt " << task_prompt_digest << ") ===\n";
  s << "-- previous candidate " << previous_hash << "\n";
  describe(s, previous_result);
  s << "-- incumbent " << incumbent_hash << " score " << num(incumbent_score, "%.6g") << "\n";
  s << "-- recent history (oldest first)\n";
  for (const auto& h : history) {
    s << "  k=" << h.iteration << " " << h.candidate_hash << " " << to_string(h.kind)
      << " score " << num(h.score, "%.6g") << (h.promoted ? " promoted" : "") << "\n";
  }
  s << "-- previous source\n" << previous_source;
  if (!previous_source.empty() && previous_source.back() != '\n') s << "\n";
  s << "-- incumbent source\n" << incumbent_source;
  if (!incumbent_source.empty() && incumbent_source.back() != '\n') s << "\n";
  return s.str();
}

nlohmann::json to_json(const EvalResult& r) {
  nlohmann::json j{{"kind", to_string(r.kind)}};
  switch (r.kind) {
    case EvalKind::scored: {
      j["score"] = r.score;
      auto sizes = nlohmann::json::array();
      for (const auto& e : r.per_size) {
        sizes.push_back({{"size", e.size},
                         {"error", e.error_metric},
                         {"tolerance", e.tolerance},
                         {"median_seconds", e.median_seconds},
                         {"achieved_per_second", e.achieved_per_second},
                         {"unit", e.unit},
                         {"fraction", e.fraction}});
      }
      j["per_size"] = std::move(sizes);
      break;
    }
    case EvalKind::correct_fail:
      j["violating_size"] = r.violating_size;
      j["error"] = r.error_metric;
      j["tolerance"] = r.tolerance;
      j["diagnostics"] = r.diagnostics;
      break;
    default:
      j["diagnostics"] = r.diagnostics;
      break;
  }
  return j;
}

EvalResult eval_result_from_json(const nlohmann::json& j) {
  EvalResult r;
  r.kind = parse_eval_kind(j.at("kind").get<std::string>());
  r.diagnostics = j.value("diagnostics", "");
  r.violating_size = j.value("violating_size", "");
  r.error_metric = j.value("error", 0.0);
  r.tolerance = j.value("tolerance", 0.0);
  r.score = j.value("score", 0.0);
  if (j.contains("per_size")) {
    for (const auto& e : j.at("per_size")) {
      SizeEval s;
      s.size = e.at("size").get<std::string>();
      s.error_metric = e.value("error", 0.0);
      s.tolerance = e.value("tolerance", 0.0);
      s.median_seconds = e.value("median_seconds", 0.0);
      s.achieved_per_second = e.value("achieved_per_second", 0.0);
      s.unit = e.value("unit", "");
      s.fraction = e.value("fraction", 0.0);
      r.per_size.push_back(std::move(s));
    }
  }
  return r;
}

nlohmann::json FeedbackPacket::to_json() const {
  auto hist = nlohmann::json::array();
  for (const auto& h : history) {
    hist.push_back({{"k", h.iteration},
                    {"candidate_hash", h.candidate_hash},
                    {"kind", evolve::to_string(h.kind)},
                    {"score", h.score},
                    {"promoted", h.promoted}});
  }
  return {{"task_prompt_digest", task_prompt_digest},
          {"iteration", iteration},
          {"previous_hash", previous_hash},
          {"previous_result", evolve::to_json(previous_result)},
          {"incumbent_hash", incumbent_hash},
          {"incumbent_score", incumbent_score},
          {"history", std::move(hist)}};
}

}  // namespace kevo::evolve
