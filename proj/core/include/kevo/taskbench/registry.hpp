#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "kevo/taskbench/types.hpp"

namespace kevo::taskbench {

inline constexpr int kLjCellCapacity = 64;

/// Builds the task with its size table for `profile`. The seed source is left
/// empty; see attach_seed_source.
TaskSpec make_task(TaskId id, Profile profile);
std::vector<TaskSpec> builtin_tasks(Profile profile);

/// Reads `<seed_dir>/<task>.c` into task.seed_source.
void attach_seed_source(TaskSpec& task, const std::filesystem::path& seed_dir);

/// Cubic box edge for an lj system of n particles at the task density,
/// never smaller than three cutoff radii.
double lj_box(std::int64_t n, double density, double r_cut);
std::int64_t lj_cells_per_dim(double box, double r_cut);

}  // namespace kevo::taskbench
