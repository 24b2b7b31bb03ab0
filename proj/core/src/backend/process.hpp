#pragma once

#include <chrono>
#include <string>
#include <vector>

namespace kevo::backend::detail {

struct ProcessResult {
  int exit_code = -1;
  bool timed_out = false;
  bool exec_failed = false;
  /// stdout and stderr interleaved, verbatim.
  std::string output;
};

/// Runs argv[0] (PATH lookup) and captures its combined output. Kills the
/// child once `timeout` elapses.
ProcessResult run_process(const std::vector<std::string>& argv, std::chrono::milliseconds timeout);

}  // namespace kevo::backend::detail
