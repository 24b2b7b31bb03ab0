#pragma once

#include <cstdint>

#include "kevo/taskbench/types.hpp"

namespace kevo::taskbench {

/// Deterministic task inputs: identical (task, size, seed) always yields
/// byte-identical buffers. Buffer order per task is the candidate ABI order.
Buffers generate_input(const TaskSpec& task, const SizeConfig& size, std::uint64_t seed);

/// Per-coordinate jitter applied to the lj lattice, as a fraction of the
/// lattice spacing.
inline constexpr double kLjJitter = 0.05;

}  // namespace kevo::taskbench
