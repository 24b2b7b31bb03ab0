#include "kevo/paths.hpp"

#include <cstdlib>

#ifndef KEVO_DEFAULT_ABI_DIR
#define KEVO_DEFAULT_ABI_DIR "."
#endif
#ifndef KEVO_DEFAULT_SEED_DIR
#define KEVO_DEFAULT_SEED_DIR "seeds"
#endif
#ifndef KEVO_DEFAULT_CHIPS
#define KEVO_DEFAULT_CHIPS "config/chips.json"
#endif

namespace kevo {
namespace {

std::filesystem::path from_env(const char* var, const char* fallback) {
  const char* v = std::getenv(var);
  return (v != nullptr && *v != '\0') ? std::filesystem::path(v) : std::filesystem::path(fallback);
}

}  // namespace

std::filesystem::path abi_include_dir() { return from_env("KEVO_ABI_DIR", KEVO_DEFAULT_ABI_DIR); }
std::filesystem::path seed_dir() { return from_env("KEVO_SEED_DIR", KEVO_DEFAULT_SEED_DIR); }
std::filesystem::path chips_file() { return from_env("KEVO_CHIPS", KEVO_DEFAULT_CHIPS); }

}  // namespace kevo
