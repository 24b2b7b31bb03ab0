#pragma once

#include <nlohmann/json.hpp>

#include "kevo/taskbench/types.hpp"

namespace kevo {

/// Versioned export ("kevo.tasks/1") of every task under a profile: sizes,
/// constants, verification rule, work model and entry points.
nlohmann::json catalog_json(taskbench::Profile profile);

}  // namespace kevo
