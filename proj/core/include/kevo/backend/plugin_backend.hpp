#pragma once

#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "kevo/backend/backend.hpp"

namespace kevo::backend {

/// The C toolchain is missing or unusable. Raised at startup, not per candidate.
class ToolchainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ToolchainConfig {
  std::string compiler = "cc";
  std::vector<std::string> flags = {"-std=c11", "-O3", "-fPIC", "-shared"};
  std::filesystem::path include_dir;  // empty: kevo::abi_include_dir()
  std::filesystem::path work_dir;     // empty: fresh directory under the system temp dir
  std::chrono::seconds compile_timeout{60};
  /// Wall-clock budget for all repetitions at one size.
  std::chrono::milliseconds watchdog{30000};
  /// Run each size in a forked child; a crash or hang cannot take down the harness.
  bool subprocess_isolation = false;
};

/// Compiles native C candidates with the system compiler and runs them
/// through dlopen.
class PluginBackend final : public Backend {
 public:
  using Clock = std::function<double()>;  // seconds, monotonic

  explicit PluginBackend(ToolchainConfig config = {});
  ~PluginBackend() override;
  PluginBackend(const PluginBackend&) = delete;
  PluginBackend& operator=(const PluginBackend&) = delete;

  /// Throws ToolchainError if the compiler cannot be executed.
  void probe_toolchain() const;

  std::string name() const override { return "native"; }
  CompileOutcome compile(const Candidate& candidate) override;
  RunOutcome run(const CompileOutcome& artifact, const TaskSpec& task, const SizeConfig& size,
                 const Buffers& inputs, std::uint64_t seed) override;
  void release(const CompileOutcome& artifact) override;

  /// Replaces the repetition clock (tests).
  void set_clock(Clock clock) { clock_ = std::move(clock); }

  const ToolchainConfig& config() const { return config_; }
  const std::filesystem::path& work_dir() const { return work_dir_; }

 private:
  void* load(const std::string& path, std::string& error);

  ToolchainConfig config_;
  std::filesystem::path work_dir_;
  bool owns_work_dir_ = false;
  Clock clock_;
  std::mutex mutex_;
  std::map<std::string, void*> handles_;
  unsigned long sequence_ = 0;
};

}  // namespace kevo::backend
