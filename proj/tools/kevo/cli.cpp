#include "cli.hpp"

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <mutex>
#include <set>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "kevo/backend/oracle_backend.hpp"
#include "kevo/backend/plugin_backend.hpp"
#include "kevo/catalog.hpp"
#include "kevo/evolve/sweep.hpp"
#include "kevo/llm/mutators.hpp"
#include "kevo/llm/prompt.hpp"
#include "kevo/paths.hpp"
#include "kevo/taskbench/registry.hpp"

namespace kevo::cli {
namespace {

namespace fs = std::filesystem;
using taskbench::ContractError;

// Reference-speed, reference-output stand-in for the seed under --backend oracle.
constexpr const char* kOracleNeutralSeed = "#kevo-oracle\nnote seed: reference outputs at modelled speed\n";

struct Options {
  std::string task;
  std::string profile = "desk";
  std::string chip = "m1-pro";
  std::string chip_peaks;
  std::uint64_t seed = 1;
  int iters = 0;
  std::string mutator;
  std::string out = "runs";
  std::string emit = "summary";
  bool subprocess_isolation = false;
  int jobs = 1;
  std::string backend = "native";
  std::string seed_file;
  std::string llm_url;
  std::string llm_model;
  std::string candidate;
  bool held_out = false;
  bool json = false;
  std::vector<std::string> run_dirs;
};

roofline::ChipPeaks resolve_chip(const Options& o) {
  if (!o.chip_peaks.empty()) {
    double gflops = 0.0, gbs = 0.0;
    char extra = 0;
    if (std::sscanf(o.chip_peaks.c_str(), "%lf,%lf%c", &gflops, &gbs, &extra) != 2) {
      throw ContractError("--chip-peaks expects GFLOPS,GBS (e.g. 4500,200)");
    }
    return roofline::ChipPeaks(o.chip.empty() ? "custom" : o.chip, gflops, gbs);
  }
  const auto file = chips_file();
  const auto registry = fs::exists(file) ? roofline::ChipRegistry::load(file) : roofline::ChipRegistry::builtin();
  return registry.find(o.chip);
}

std::vector<taskbench::TaskSpec> resolve_tasks(const Options& o, bool allow_all) {
  const auto profile = taskbench::parse_profile(o.profile);
  std::vector<taskbench::TaskSpec> tasks;
  if (o.task.empty() || o.task == "all") {
    if (!allow_all) throw ContractError("--task is required");
    tasks = taskbench::builtin_tasks(profile);
  } else {
    std::istringstream in(o.task);
    std::string name;
    while (std::getline(in, name, ',')) tasks.push_back(taskbench::make_task(taskbench::parse_task(name), profile));
  }
  for (auto& t : tasks) {
    if (!o.seed_file.empty()) {
      std::ifstream f(o.seed_file, std::ios::binary);
      if (!f) throw ContractError("cannot read seed file " + o.seed_file);
      std::ostringstream ss;
      ss << f.rdbuf();
      t.seed_source = ss.str();
    } else if (o.backend == "oracle") {
      t.seed_source = kOracleNeutralSeed;
    } else {
      taskbench::attach_seed_source(t, seed_dir());
    }
  }
  return tasks;
}

std::unique_ptr<backend::Backend> make_backend(const Options& o, const roofline::ChipPeaks& chip) {
  if (o.backend == "oracle") return std::make_unique<backend::OracleBackend>(chip);
  if (o.backend != "native") throw ContractError("--backend must be native or oracle");
  backend::ToolchainConfig cfg;
  if (const char* cc = std::getenv("KEVO_CC"); cc != nullptr && *cc) cfg.compiler = cc;
  // The in-process watchdog uses process-wide signal state; concurrent
  // evaluations need one process each.
  cfg.subprocess_isolation = o.subprocess_isolation || o.jobs > 1;
  auto b = std::make_unique<backend::PluginBackend>(cfg);
  b->probe_toolchain();
  return b;
}

std::unique_ptr<evolve::Mutator> make_mutator(const Options& o, const fs::path& out_dir) {
  if (o.mutator.starts_with("scripted:")) {
    return std::make_unique<llm::ScriptedMutator>(llm::ScriptedMutator::from_directory(o.mutator.substr(9)));
  }
  if (o.mutator == "llm") {
    llm::HttpMutatorConfig cfg;
    cfg.base_url = o.llm_url;
    cfg.model = o.llm_model;
    cfg.log_dir = out_dir / "llm";
    return std::make_unique<llm::HttpMutator>(cfg);
  }
  throw ContractError("--mutator must be scripted:<dir> or llm");
}

// Runs fn(i) for i in [0, n) on up to `jobs` threads; results keep index order.
template <class Fn>
void parallel_for(std::size_t n, int jobs, Fn&& fn) {
  if (jobs <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (int t = 0; t < jobs && static_cast<std::size_t>(t) < n; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

int cmd_tasks(const Options& o, std::ostream& out) {
  const auto catalog = catalog_json(taskbench::parse_profile(o.profile));
  if (o.json) {
    out << catalog.dump(2) << '\n';
    return kExitOk;
  }
  for (const auto& t : catalog["tasks"]) {
    out << t["id"].get<std::string>() << "  " << t["regime"].get<std::string>() << "  "
        << t["bound"].get<std::string>() << "  in-dist:";
    for (const auto& s : t["in_dist"]) out << ' ' << s["label"].get<std::string>();
    out << "  held-out: " << t["held_out"]["label"].get<std::string>() << '\n';
  }
  return kExitOk;
}

int cmd_validate(const Options& o, std::ostream& out) {
  const auto chip = resolve_chip(o);
  const auto tasks = resolve_tasks(o, true);
  auto backend = make_backend(o, chip);
  std::vector<std::string> lines(tasks.size());
  std::vector<int> ok(tasks.size(), 0);
  parallel_for(tasks.size(), o.jobs, [&](std::size_t i) {
    const auto& task = tasks[i];
    const auto t0 = std::chrono::steady_clock::now();
    std::string line;
    try {
      evolve::Evaluator ev(task, *backend, chip, o.seed);
      const auto seed = backend::Candidate::seed(task.seed_source);
      const auto r = ev.evaluate(seed);
      if (r.kind != evolve::EvalKind::scored) {
        line = "FAIL " + std::string(taskbench::to_string(task.id)) + ": " +
               std::string(evolve::to_string(r.kind)) + ": " + r.diagnostics;
      } else {
        const auto h = ev.evaluate_held_out(seed);
        ok[i] = h.chi ? 1 : 0;
        line = std::string(h.chi ? "ok   " : "FAIL ") + std::string(taskbench::to_string(task.id)) +
               "  S=" + fmt("%.4g", r.score) + "  held-out " + h.size.label() + " " +
               (h.chi ? "verified" : "incorrect: " + h.detail) + " (" +
               roofline::format_percent(h.fraction) + " of ceiling)";
      }
    } catch (const std::exception& e) {
      line = "FAIL " + std::string(taskbench::to_string(task.id)) + ": " + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!line.empty() && line.back() == '\n') line.pop_back();
    lines[i] = line + "  [" + fmt("%.1f", secs) + " s]";
  });
  int failed = 0;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    out << lines[i] << '\n';
    failed += ok[i] ? 0 : 1;
  }
  out << (failed == 0 ? "all seeds verified" : std::to_string(failed) + " task(s) failed") << '\n';
  return failed == 0 ? kExitOk : kExitError;
}

int cmd_run(const Options& o, std::ostream& out, std::ostream& err) {
  const auto chip = resolve_chip(o);
  const auto tasks = resolve_tasks(o, true);
  if (o.mutator.empty()) throw ContractError("--mutator is required (scripted:<dir> or llm)");
  auto backend = make_backend(o, chip);
  const bool many = tasks.size() > 1;
  std::vector<nlohmann::json> summaries(tasks.size());
  std::vector<std::string> errors(tasks.size());
  std::vector<std::string> convergence(tasks.size());
  std::mutex err_mutex;
  parallel_for(tasks.size(), o.jobs, [&](std::size_t i) {
    const auto& task = tasks[i];
    const fs::path dir = many ? fs::path(o.out) / std::string(taskbench::to_string(task.id)) : fs::path(o.out);
    try {
      auto mutator = make_mutator(o, dir);
      evolve::Evaluator ev(task, *backend, chip, o.seed);
      evolve::SweepConfig cfg;
      cfg.iterations = o.iters > 0 ? o.iters : task.default_iterations;
      cfg.profile = o.profile;
      cfg.chip = chip.name();
      const auto prompt = llm::render_task_prompt(task, chip);
      auto log = evolve::run_sweep(ev, *mutator, prompt, cfg, [&](const evolve::IterationRecord& r) {
        std::lock_guard lock(err_mutex);
        err << taskbench::to_string(task.id) << " k=" << r.k << " " << evolve::to_string(r.result.kind)
            << " score " << fmt("%.4g", r.result.effective_score()) << (r.promoted ? " promoted" : "") << '\n';
      });
      evolve::write_runlog(log, dir);
      summaries[i] = evolve::summary_json(log);
      convergence[i] = evolve::convergence_csv(log);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  });
  int code = kExitOk;
  if (o.emit == "summary") out << evolve::summary_header() << '\n';
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    if (!errors[i].empty()) {
      err << "error: " << taskbench::to_string(tasks[i].id) << ": " << errors[i] << '\n';
      code = kExitError;
      continue;
    }
    if (o.emit == "convergence") {
      out << convergence[i];
    } else {
      out << evolve::summary_row(summaries[i]) << '\n';
    }
    if (!summaries[i].value("held_out_chi", false) && code == kExitOk) code = kExitHeldOutFail;
  }
  return code;
}

int cmd_report(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.run_dirs.empty()) throw ContractError("report needs at least one run directory");
  std::vector<evolve::RunLog> logs;
  std::set<std::string> profiles;
  for (const auto& d : o.run_dirs) {
    logs.push_back(evolve::read_runlog(d));
    profiles.insert(logs.back().profile);
  }
  if (profiles.size() > 1) {
    std::string names;
    for (const auto& p : profiles) names += (names.empty() ? "" : ", ") + p;
    err << "warning: mixed profiles in one report (" << names << ")\n";
  }
  if (o.json) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& log : logs) rows.push_back(evolve::summary_json(log));
    out << nlohmann::json{{"schema", "kevo.report/1"}, {"mixed_profiles", profiles.size() > 1}, {"rows", rows}}.dump(2)
        << '\n';
    return kExitOk;
  }
  if (o.emit == "summary") out << evolve::summary_header() << '\n';
  for (const auto& log : logs) {
    if (o.emit == "convergence") {
      out << evolve::convergence_csv(log);
    } else {
      out << evolve::summary_row(evolve::summary_json(log)) << '\n';
    }
  }
  return kExitOk;
}

int cmd_eval(const Options& o, std::ostream& out) {
  if (o.candidate.empty()) throw ContractError("eval needs --candidate <file>");
  const auto chip = resolve_chip(o);
  auto tasks = resolve_tasks(o, false);
  if (tasks.size() != 1) throw ContractError("eval takes exactly one --task");
  std::ifstream f(o.candidate, std::ios::binary);
  if (!f) throw ContractError("cannot read " + o.candidate);
  std::ostringstream ss;
  ss << f.rdbuf();
  auto backend = make_backend(o, chip);
  evolve::Evaluator ev(tasks[0], *backend, chip, o.seed);
  const auto cand = backend::Candidate::proposed(ss.str(), "", 0);
  nlohmann::json j{{"task", taskbench::to_string(tasks[0].id)},
                   {"candidate_hash", cand.hash()},
                   {"result", evolve::to_json(ev.evaluate(cand))}};
  int code = kExitOk;
  if (o.held_out) {
    const auto h = ev.evaluate_held_out(cand);
    j["held_out"] = {{"size", h.size.label()}, {"chi", h.chi}, {"fraction", h.fraction},
                     {"phi", h.phi},           {"elapsed_seconds", h.elapsed_seconds}, {"detail", h.detail}};
    if (!h.chi) code = kExitHeldOutFail;
  }
  out << j.dump(2) << '\n';
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"kevo: evolutionary kernel search with roofline scoring and a held-out gate", "kevo"};
  app.set_config("--config", "", "key = value configuration file");
  app.fallthrough();
  app.require_subcommand(1);

  app.add_option("--task", o.task, "task name, comma list or 'all'")->envname("KEVO_TASK");
  app.add_option("--profile", o.profile, "size table")->check(CLI::IsMember({"paper", "desk"}))->envname("KEVO_PROFILE");
  app.add_option("--chip", o.chip, "chip name in the registry")->envname("KEVO_CHIP");
  app.add_option("--chip-peaks", o.chip_peaks, "custom peaks GFLOPS,GBS")->envname("KEVO_CHIP_PEAKS");
  app.add_option("--seed", o.seed, "input and RNG seed")->envname("KEVO_SEED");
  app.add_option("--backend", o.backend, "native or oracle")->check(CLI::IsMember({"native", "oracle"}))->envname("KEVO_BACKEND");
  app.add_option("--seed-file", o.seed_file, "replace the task seed kernel")->envname("KEVO_SEED_FILE");
  app.add_flag("--subprocess-isolation", o.subprocess_isolation, "measure each size in a child process")
      ->envname("KEVO_SUBPROCESS_ISOLATION");
  app.add_option("--jobs", o.jobs, "tasks evaluated concurrently")->check(CLI::PositiveNumber)->envname("KEVO_JOBS");

  auto* validate = app.add_subcommand("validate", "compile, run and verify the seed kernels");
  auto* run_cmd = app.add_subcommand("run", "run the evolutionary search");
  run_cmd->add_option("--mutator", o.mutator, "scripted:<dir> or llm")->envname("KEVO_MUTATOR");
  run_cmd->add_option("--iters", o.iters, "iterations (default: per task)")->check(CLI::NonNegativeNumber)->envname("KEVO_ITERS");
  run_cmd->add_option("--out", o.out, "output directory")->envname("KEVO_OUT");
  run_cmd->add_option("--emit", o.emit, "summary or convergence")->check(CLI::IsMember({"summary", "convergence"}));
  run_cmd->add_option("--llm-url", o.llm_url, "chat-completions base URL")->envname("KEVO_LLM_URL");
  run_cmd->add_option("--llm-model", o.llm_model, "model name")->envname("KEVO_LLM_MODEL");
  auto* report = app.add_subcommand("report", "summarise finished runs");
  report->add_option("dirs", o.run_dirs, "run directories")->required();
  report->add_option("--emit", o.emit, "summary or convergence")->check(CLI::IsMember({"summary", "convergence"}));
  report->add_flag("--json", o.json, "machine-readable rows");
  auto* eval = app.add_subcommand("eval", "evaluate one candidate");
  eval->add_option("--candidate", o.candidate, "candidate source file")->required();
  eval->add_flag("--held-out", o.held_out, "also measure at the held-out size");
  auto* tasks = app.add_subcommand("tasks", "list the task catalog");
  tasks->add_flag("--json", o.json, "print the versioned JSON catalog");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }

  try {
    if (validate->parsed()) return cmd_validate(o, out);
    if (run_cmd->parsed()) return cmd_run(o, out, err);
    if (report->parsed()) return cmd_report(o, out, err);
    if (eval->parsed()) return cmd_eval(o, out);
    if (tasks->parsed()) return cmd_tasks(o, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace kevo::cli
