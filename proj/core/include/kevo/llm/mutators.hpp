#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "kevo/evolve/mutator.hpp"

namespace kevo::llm {

/// Replays a fixed list of candidates. Running out is a mutator failure.
class ScriptedMutator final : public evolve::Mutator {
 public:
  explicit ScriptedMutator(std::vector<std::string> candidates, std::string id = "scripted");
  /// Every regular file of `dir`, in lexicographic filename order.
  static ScriptedMutator from_directory(const std::filesystem::path& dir);

  std::string id() const override { return id_; }
  std::string propose(const evolve::TaskPrompt& prompt, const evolve::FeedbackPacket& feedback) override;

  std::size_t remaining() const { return candidates_.size() - next_; }

 private:
  std::vector<std::string> candidates_;
  std::size_t next_ = 0;
  std::string id_;
};

/// Contents of every ``` fenced block, language tag stripped.
std::vector<std::string> extract_code_blocks(std::string_view text);

struct HttpMutatorConfig {
  /// e.g. "http://127.0.0.1:8080/v1"; requests go to {base_url}/chat/completions.
  std::string base_url;
  std::string model;
  /// Environment variable holding the bearer token; must be set at construction.
  /// Empty disables authentication (local endpoints).
  std::string api_key_env = "KEVO_API_KEY";
  double temperature = 0.7;
  int max_attempts = 3;
  std::chrono::milliseconds retry_backoff{500};
  std::chrono::seconds timeout{180};
  /// When set, each exchange is written here with the token redacted.
  std::filesystem::path log_dir;
};

/// Chat-completions client. Transport errors, 429 and 5xx are retried; other
/// failures and responses without exactly one code block raise MutatorError.
class HttpMutator final : public evolve::Mutator {
 public:
  explicit HttpMutator(HttpMutatorConfig config);

  std::string id() const override { return "llm:" + config_.model; }
  std::string propose(const evolve::TaskPrompt& prompt, const evolve::FeedbackPacket& feedback) override;

  /// Bodies of every request sent so far, in order.
  const std::vector<std::string>& request_bodies() const { return requests_; }

 private:
  void log_exchange(int iteration, int attempt, const std::string& request, int status,
                    const std::string& response) const;

  HttpMutatorConfig config_;
  std::string scheme_host_port_;
  std::string path_prefix_;
  std::vector<std::string> requests_;
};

}  // namespace kevo::llm
