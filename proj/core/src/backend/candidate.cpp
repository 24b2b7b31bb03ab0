#include "kevo/backend/candidate.hpp"

#include <cstdio>

namespace kevo::backend {

std::string_view to_string(Dialect d) { return d == Dialect::oracle ? "oracle" : "native_plugin"; }

std::string_view to_string(Origin o) { return o == Origin::seed ? "seed" : "mutator"; }

std::string content_hash(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Dialect detect_dialect(std::string_view source) {
  const auto start = source.find_first_not_of(" \t\r\n");
  if (start != std::string_view::npos && source.substr(start).starts_with(kOracleMagic)) {
    return Dialect::oracle;
  }
  return Dialect::native_plugin;
}

Candidate Candidate::seed(std::string source) {
  Candidate c;
  c.dialect = detect_dialect(source);
  c.source = std::move(source);
  c.origin = Origin::seed;
  return c;
}

Candidate Candidate::proposed(std::string source, std::string parent_hash, int iteration) {
  Candidate c;
  c.dialect = detect_dialect(source);
  c.source = std::move(source);
  c.parent_hash = std::move(parent_hash);
  c.iteration = iteration;
  c.origin = Origin::mutator;
  return c;
}

}  // namespace kevo::backend
