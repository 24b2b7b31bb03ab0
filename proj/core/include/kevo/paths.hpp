#pragma once

#include <filesystem>

namespace kevo {

// Locations baked in at configure time; each can be overridden by the named
// environment variable.

/// Directory containing kevo/abi.h (KEVO_ABI_DIR).
std::filesystem::path abi_include_dir();
/// Directory holding <task>.c seed kernels (KEVO_SEED_DIR).
std::filesystem::path seed_dir();
/// Chip registry JSON (KEVO_CHIPS).
std::filesystem::path chips_file();

}  // namespace kevo
