#include "kevo/catalog.hpp"

#include "kevo/backend/dispatch.hpp"
#include "kevo/roofline/roofline.hpp"
#include "kevo/taskbench/registry.hpp"

namespace kevo {
namespace {

nlohmann::json size_json(const taskbench::SizeConfig& s) {
  nlohmann::json params = nlohmann::json::object();
  for (const auto& p : s.params) params[p.name] = p.value;
  return {{"label", s.label()}, {"params", params}, {"steps", s.steps}};
}

}  // namespace

nlohmann::json catalog_json(taskbench::Profile profile) {
  auto tasks = nlohmann::json::array();
  for (const auto& t : taskbench::builtin_tasks(profile)) {
    const auto model = roofline::work_model(t.id);
    auto in_dist = nlohmann::json::array();
    for (const auto& s : t.in_dist) in_dist.push_back(size_json(s));
    tasks.push_back({{"id", taskbench::to_string(t.id)},
                     {"regime", taskbench::to_string(t.regime)},
                     {"bound", taskbench::to_string(t.bound)},
                     {"in_dist", std::move(in_dist)},
                     {"held_out", size_json(t.held_out)},
                     {"constants", t.constants},
                     {"verification",
                      {{"kind", taskbench::to_string(t.verification.kind)},
                       {"abs_tol", t.verification.abs_tol},
                       {"rel_tol", t.verification.rel_tol},
                       {"stat_mean_tol", t.verification.stat_mean_tol},
                       {"stat_cov_tol", t.verification.stat_cov_tol}}},
                     {"work_model",
                      {{"kind", taskbench::to_string(model.kind)},
                       {"per_unit_per_step", model.coefficient},
                       {"unit", model.unit}}},
                     {"entry_points", backend::entry_points(t.id)},
                     {"default_iterations", t.default_iterations}});
  }
  return {{"schema", "kevo.tasks/1"}, {"profile", taskbench::to_string(profile)}, {"tasks", std::move(tasks)}};
}

}  // namespace kevo
