#include "kevo/evolve/runlog.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "kevo/evolve/feedback.hpp"

namespace kevo::evolve {

using taskbench::ContractError;
namespace fs = std::filesystem;

namespace {

nlohmann::json verdict_json(const roofline::HeldOutVerdict& v) {
  return {{"size", v.size.label()},     {"steps", v.size.steps},
          {"chi", v.chi},               {"fraction", v.fraction},
          {"phi", v.phi},               {"elapsed_seconds", v.elapsed_seconds},
          {"detail", v.detail}};
}

taskbench::SizeConfig size_from_label(taskbench::TaskId task, const std::string& label, int steps) {
  taskbench::SizeConfig s;
  s.task = task;
  s.steps = steps;
  std::istringstream in(label);
  std::string part;
  while (std::getline(in, part, ',')) {
    const auto eq = part.find('=');
    if (eq == std::string::npos) throw ContractError("malformed size label '" + label + "'");
    s.params.push_back({part.substr(0, eq), std::stoll(part.substr(eq + 1))});
  }
  return s;
}

roofline::HeldOutVerdict verdict_from_json(taskbench::TaskId task, const nlohmann::json& j) {
  roofline::HeldOutVerdict v;
  v.size = size_from_label(task, j.at("size").get<std::string>(), j.value("steps", 1));
  v.chi = j.value("chi", false);
  v.fraction = j.value("fraction", 0.0);
  v.phi = j.value("phi", 0.0);
  v.elapsed_seconds = j.value("elapsed_seconds", 0.0);
  v.detail = j.value("detail", "");
  return v;
}

nlohmann::json iteration_json(const IterationRecord& r) {
  return {{"type", "iteration"},
          {"k", r.k},
          {"candidate_hash", r.candidate_hash},
          {"parent_hash", r.parent_hash},
          {"origin", backend::to_string(r.origin)},
          {"result", to_json(r.result)},
          {"promoted", r.promoted},
          {"incumbent_hash", r.incumbent_hash},
          {"best_score", r.best_score},
          {"wall_times", {{"propose_seconds", r.propose_seconds}, {"evaluate_seconds", r.evaluate_seconds}}},
          {"feedback", r.feedback}};
}

IterationRecord iteration_from_json(const nlohmann::json& j) {
  IterationRecord r;
  r.k = j.at("k").get<int>();
  r.candidate_hash = j.value("candidate_hash", "");
  r.parent_hash = j.value("parent_hash", "");
  r.origin = j.value("origin", "seed") == "seed" ? backend::Origin::seed : backend::Origin::mutator;
  r.result = eval_result_from_json(j.at("result"));
  r.promoted = j.value("promoted", false);
  r.incumbent_hash = j.value("incumbent_hash", "");
  r.best_score = j.value("best_score", 0.0);
  if (j.contains("wall_times")) {
    r.propose_seconds = j["wall_times"].value("propose_seconds", 0.0);
    r.evaluate_seconds = j["wall_times"].value("evaluate_seconds", 0.0);
  }
  r.feedback = j.value("feedback", "");
  return r;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

}  // namespace

std::string outcome_tag(bool held_out_chi, double in_dist_speedup, double held_out_speedup) {
  if (!held_out_chi) return "FAIL";
  if (in_dist_speedup > 1.0 && held_out_speedup < 1.0) return "silent regression";
  if (in_dist_speedup >= kMeaningfulSpeedup && held_out_speedup >= kMeaningfulSpeedup) return "generalizes";
  if (in_dist_speedup < kMeaningfulSpeedup) return "flat";
  return "tied";
}

nlohmann::json summary_json(const RunLog& log) {
  int promotions = 0;
  for (const auto& it : log.iterations) promotions += (it.k > 0 && it.promoted) ? 1 : 0;
  const auto& f = log.final;
  return {{"schema", "kevo.summary/1"},
          {"task", log.task},
          {"profile", log.profile},
          {"chip", log.chip},
          {"mutator", log.mutator_id},
          {"backend", log.backend},
          {"iterations", log.iterations_requested},
          {"seed", log.seed},
          {"promotions", promotions},
          {"best_hash", f.best_hash},
          {"seed_score", f.seed_score},
          {"best_score", f.in_dist_score},
          {"in_dist_speedup", f.in_dist_speedup},
          {"held_out_size", f.held_out.size.label()},
          {"held_out_chi", f.held_out.chi},
          {"held_out_fraction", f.held_out.fraction},
          {"held_out_phi", f.held_out.phi},
          {"held_out_speedup", f.held_out_speedup},
          {"held_out_detail", f.held_out.detail},
          {"outcome", f.outcome}};
}

std::string convergence_csv(const RunLog& log) {
  std::ostringstream s;
  s << "k,kind,score,best_score,best_over_seed,promoted,candidate_hash,incumbent_hash\n";
  const double seed = log.final.seed_score;
  for (const auto& r : log.iterations) {
    s << r.k << ',' << to_string(r.result.kind) << ',' << fmt("%.9g", r.result.effective_score()) << ','
      << fmt("%.9g", r.best_score) << ',' << fmt("%.6g", seed > 0.0 ? r.best_score / seed : 0.0) << ','
      << (r.promoted ? 1 : 0) << ',' << r.candidate_hash << ',' << r.incumbent_hash << '\n';
  }
  return s.str();
}

void write_runlog(const RunLog& log, const fs::path& dir) {
  fs::create_directories(dir / "sources");
  for (const auto& [hash, src] : log.sources) {
    std::ofstream f(dir / "sources" / (hash + ".src"), std::ios::binary);
    f << src;
  }
  {
    std::ofstream f(dir / "runlog.jsonl");
    const nlohmann::json header{{"type", "header"},
                                {"schema", "kevo.runlog/1"},
                                {"task", log.task},
                                {"profile", log.profile},
                                {"chip", log.chip},
                                {"mutator", log.mutator_id},
                                {"backend", log.backend},
                                {"K", log.iterations_requested},
                                {"seed", log.seed}};
    f << header.dump() << '\n';
    for (const auto& r : log.iterations) f << iteration_json(r).dump() << '\n';
    const auto& v = log.final;
    const nlohmann::json fin{{"type", "final"},
                             {"best_hash", v.best_hash},
                             {"in_dist_score", v.in_dist_score},
                             {"seed_score", v.seed_score},
                             {"in_dist_speedup", v.in_dist_speedup},
                             {"held_out", verdict_json(v.held_out)},
                             {"seed_held_out", verdict_json(v.seed_held_out)},
                             {"held_out_speedup", v.held_out_speedup},
                             {"outcome", v.outcome}};
    f << fin.dump() << '\n';
    if (!f) throw std::runtime_error("cannot write " + (dir / "runlog.jsonl").string());
  }
  std::ofstream(dir / "summary.json") << summary_json(log).dump(2) << '\n';
  std::ofstream(dir / "convergence.csv") << convergence_csv(log);
}

RunLog read_runlog(const fs::path& dir) {
  std::ifstream in(dir / "runlog.jsonl");
  if (!in) throw ContractError("no runlog.jsonl in " + dir.string());
  RunLog log;
  taskbench::TaskId task = taskbench::TaskId::saxpy;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ContractError("runlog.jsonl line " + std::to_string(lineno) + ": " + e.what());
    }
    const auto type = j.value("type", "");
    if (type == "header") {
      log.task = j.value("task", "");
      task = taskbench::parse_task(log.task);
      log.profile = j.value("profile", "");
      log.chip = j.value("chip", "");
      log.mutator_id = j.value("mutator", "");
      log.backend = j.value("backend", "");
      log.iterations_requested = j.value("K", 0);
      log.seed = j.value("seed", std::uint64_t{0});
    } else if (type == "iteration") {
      log.iterations.push_back(iteration_from_json(j));
    } else if (type == "final") {
      auto& v = log.final;
      v.best_hash = j.value("best_hash", "");
      v.in_dist_score = j.value("in_dist_score", 0.0);
      v.seed_score = j.value("seed_score", 0.0);
      v.in_dist_speedup = j.value("in_dist_speedup", 0.0);
      v.held_out = verdict_from_json(task, j.at("held_out"));
      v.seed_held_out = verdict_from_json(task, j.at("seed_held_out"));
      v.held_out_speedup = j.value("held_out_speedup", 0.0);
      v.outcome = j.value("outcome", "");
    }
  }
  if (fs::exists(dir / "sources")) {
    for (const auto& e : fs::directory_iterator(dir / "sources")) {
      if (e.path().extension() != ".src") continue;
      std::ifstream f(e.path(), std::ios::binary);
      std::ostringstream ss;
      ss << f.rdbuf();
      log.sources[e.path().stem().string()] = ss.str();
    }
  }
  return log;
}

std::string summary_header() {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-10s %10s %18s %11s  %s", "task", "in-dist x", "held-out frac",
                "held-out x", "outcome");
  return buf;
}

std::string summary_row(const nlohmann::json& s) {
  const bool chi = s.value("held_out_chi", false);
  const std::string frac = chi ? roofline::format_percent(s.value("held_out_fraction", 0.0)) : "FAIL";
  char speed[32] = "-";
  if (chi) std::snprintf(speed, sizeof speed, "%.2fx", s.value("held_out_speedup", 0.0));
  char buf[200];
  std::snprintf(buf, sizeof buf, "%-10s %9.2fx %18s %11s  %s", s.value("task", "").c_str(),
                s.value("in_dist_speedup", 0.0), frac.c_str(), speed, s.value("outcome", "").c_str());
  return buf;
}

}  // namespace kevo::evolve
