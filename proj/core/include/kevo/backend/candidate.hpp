#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace kevo::backend {

enum class Dialect { native_plugin, oracle };
enum class Origin { seed, mutator };

std::string_view to_string(Dialect d);
std::string_view to_string(Origin o);

/// 16 hex digits of 64-bit FNV-1a over the source bytes.
std::string content_hash(std::string_view text);

/// Sources starting with this line are oracle-backend directive scripts.
inline constexpr std::string_view kOracleMagic = "#kevo-oracle";

Dialect detect_dialect(std::string_view source);

struct Candidate {
  std::string source;
  Dialect dialect = Dialect::native_plugin;
  std::string parent_hash;
  int iteration = 0;
  Origin origin = Origin::seed;

  std::string hash() const { return content_hash(source); }

  static Candidate seed(std::string source);
  static Candidate proposed(std::string source, std::string parent_hash, int iteration);
};

}  // namespace kevo::backend
