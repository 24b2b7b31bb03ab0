#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kevo::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitHeldOutFail = 2;

/// Entry point of the `kevo` command; args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kevo::cli
