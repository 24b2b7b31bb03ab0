#include "kevo/taskbench/registry.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

namespace kevo::taskbench {
namespace {

struct SizeTable {
  std::vector<std::vector<SizeParam>> in_dist;
  std::vector<SizeParam> held_out;
};

SizeConfig make_size(TaskId id, std::vector<SizeParam> params, int steps) {
  SizeConfig s;
  s.task = id;
  s.params = std::move(params);
  s.steps = steps;
  return s;
}

std::vector<SizeParam> edge(std::int64_t n) { return {{"N", n}}; }

std::vector<SizeParam> chains(std::int64_t d, std::int64_t k) { return {{"d", d}, {"K", k}}; }

SizeTable edges(std::vector<std::int64_t> in, std::int64_t held) {
  SizeTable t;
  for (auto n : in) t.in_dist.push_back(edge(n));
  t.held_out = edge(held);
  return t;
}

SizeTable size_table(TaskId id, Profile profile) {
  const bool paper = profile == Profile::paper;
  constexpr std::int64_t M = 1 << 20;
  switch (id) {
    case TaskId::saxpy: {
      SizeTable t;
      if (paper) {
        for (auto n : {1 * M, 16 * M, 64 * M}) t.in_dist.push_back({{"n", n}});
        t.held_out = {{"n", 4 * M}};
      } else {
        for (auto n : {M / 16, M / 4, M}) t.in_dist.push_back({{"n", n}});
        t.held_out = {{"n", M / 2}};
      }
      return t;
    }
    case TaskId::heat2d: return paper ? edges({256, 512, 1024}, 768) : edges({64, 128, 256}, 192);
    case TaskId::wave3d: return paper ? edges({64, 160, 192}, 128) : edges({16, 40, 48}, 32);
    case TaskId::nbody: return paper ? edges({256, 1024, 2048}, 512) : edges({64, 256, 512}, 128);
    case TaskId::hmc: {
      SizeTable t;
      if (paper) {
        t.in_dist = {chains(8, 16384), chains(16, 4096), chains(32, 1024)};
        t.held_out = chains(24, 2048);
      } else {
        t.in_dist = {chains(8, 2048), chains(16, 1024), chains(32, 256)};
        t.held_out = chains(24, 512);
      }
      return t;
    }
    case TaskId::lbm: return paper ? edges({64, 128, 256}, 192) : edges({16, 32, 64}, 48);
    case TaskId::ising: return paper ? edges({256, 1024, 2048}, 1536) : edges({64, 256, 512}, 384);
    case TaskId::lj: return paper ? edges({1728, 4096, 10648}, 2744) : edges({343, 512, 1000}, 729);
    case TaskId::gradshaf: return paper ? edges({65, 257, 513}, 129) : edges({17, 65, 129}, 33);
    case TaskId::fft3d: return paper ? edges({32, 64, 128}, 256) : edges({8, 16, 32}, 64);
  }
  throw ContractError("unregistered task");
}

int steps_for(TaskId id) {
  switch (id) {
    case TaskId::saxpy: return 1;
    case TaskId::heat2d: return 50;
    case TaskId::wave3d: return 20;
    case TaskId::nbody: return 5;
    case TaskId::hmc: return 100;
    case TaskId::lbm: return 50;
    case TaskId::ising: return 20;
    case TaskId::lj: return 10;
    case TaskId::gradshaf: return 50;
    case TaskId::fft3d: return 1;
  }
  return 1;
}

VerificationRule field_rule() { return {VerifyKind::max_abs_tolerance, 1e-4, 1e-4, 0.0, 0.0}; }

}  // namespace

TaskSpec make_task(TaskId id, Profile profile) {
  TaskSpec t;
  t.id = id;
  t.verification = field_rule();
  switch (id) {
    case TaskId::saxpy:
      t.regime = Regime::smoke;
      t.constants = {{"a", 2.0}};
      break;
    case TaskId::heat2d:
      t.regime = Regime::R1;
      t.constants = {{"alpha", 0.2}};
      break;
    case TaskId::wave3d:
      t.regime = Regime::R1;
      t.constants = {{"alpha", 0.18}};
      t.default_iterations = 15;
      break;
    case TaskId::nbody:
      t.regime = Regime::R2;
      t.constants = {{"G", 1.0}, {"eps", 0.05}, {"dt", 1e-3}};
      break;
    case TaskId::hmc:
      t.regime = Regime::R2;
      t.constants = {{"eps", 0.025}, {"L", 10.0}, {"lambda_min", 1.0}, {"lambda_max", 100.0}};
      t.verification = {VerifyKind::statistical_moments, 0.0, 0.0, 4.0, 3.0};
      break;
    case TaskId::lbm:
      t.regime = Regime::R3;
      t.constants = {{"tau", 0.8}};
      t.default_iterations = 25;
      break;
    case TaskId::ising:
      t.regime = Regime::R3;
      t.constants = {{"beta", 0.4}, {"J", 1.0}};
      t.verification = {VerifyKind::byte_equality, 0.0, 0.0, 0.0, 0.0};
      break;
    case TaskId::lj:
      t.regime = Regime::R4;
      t.constants = {{"dt", 0.005}, {"r_cut", 2.5}, {"density", 0.8}};
      break;
    case TaskId::gradshaf:
      t.regime = Regime::R5;
      t.constants = {{"omega", 0.8}, {"mu0", 1.0},   {"p_axis", 1.0}, {"r_min", 1.0},
                     {"r_max", 2.0}, {"z_min", -0.5}, {"z_max", 0.5}};
      break;
    case TaskId::fft3d:
      t.regime = Regime::R6;
      t.verification = {VerifyKind::relative_max_norm, 1e-3, 1e-3, 0.0, 0.0};
      break;
  }
  t.bound = (t.regime == Regime::R2 || id == TaskId::lj) ? BoundKind::compute : BoundKind::bandwidth;

  auto table = size_table(id, profile);
  const int steps = steps_for(id);
  for (auto& p : table.in_dist) t.in_dist.push_back(make_size(id, std::move(p), steps));
  t.held_out = make_size(id, std::move(table.held_out), steps);
  t.validate();
  return t;
}

std::vector<TaskSpec> builtin_tasks(Profile profile) {
  std::vector<TaskSpec> out;
  for (auto id : all_tasks()) out.push_back(make_task(id, profile));
  return out;
}

void attach_seed_source(TaskSpec& task, const std::filesystem::path& seed_dir) {
  const auto path = seed_dir / (std::string(to_string(task.id)) + ".c");
  std::ifstream in(path);
  if (!in) throw ContractError("cannot read seed kernel " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  task.seed_source = ss.str();
}

double lj_box(std::int64_t n, double density, double r_cut) {
  if (n <= 0 || density <= 0.0) throw ContractError("lj_box: n and density must be positive");
  return std::max(std::cbrt(static_cast<double>(n) / density), 3.0 * r_cut);
}

std::int64_t lj_cells_per_dim(double box, double r_cut) {
  if (box < 3.0 * r_cut) throw ContractError("lj: box must be at least 3*r_cut");
  return static_cast<std::int64_t>(std::floor(box / r_cut));
}

}  // namespace kevo::taskbench
