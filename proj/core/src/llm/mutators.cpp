#include "kevo/llm/mutators.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

namespace kevo::llm {

using evolve::MutatorError;

ScriptedMutator::ScriptedMutator(std::vector<std::string> candidates, std::string id)
    : candidates_(std::move(candidates)), id_(std::move(id)) {}

ScriptedMutator ScriptedMutator::from_directory(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw taskbench::ContractError("scripted mutator: " + dir.string() + " is not a directory");
  }
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    if (e.is_regular_file()) files.push_back(e.path());
  }
  std::sort(files.begin(), files.end(),
            [](const auto& a, const auto& b) { return a.filename().string() < b.filename().string(); });
  std::vector<std::string> sources;
  for (const auto& f : files) {
    std::ifstream in(f, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    sources.push_back(ss.str());
  }
  return ScriptedMutator(std::move(sources), "scripted:" + dir.filename().string());
}

std::string ScriptedMutator::propose(const evolve::TaskPrompt&, const evolve::FeedbackPacket&) {
  if (next_ >= candidates_.size()) {
    throw MutatorError("scripted mutator exhausted after " + std::to_string(candidates_.size()) +
                       " candidates");
  }
  return candidates_[next_++];
}

std::vector<std::string> extract_code_blocks(std::string_view text) {
  std::vector<std::string> blocks;
  std::size_t pos = 0;
  while (true) {
    const auto open = text.find("```", pos);
    if (open == std::string_view::npos) break;
    const auto eol = text.find('\n', open);
    if (eol == std::string_view::npos) break;
    auto close = text.find("\n```", eol);
    if (close == std::string_view::npos) break;
    blocks.emplace_back(text.substr(eol + 1, close + 1 - (eol + 1)));
    close += 4;
    const auto after = text.find('\n', close);
    pos = after == std::string_view::npos ? text.size() : after;
  }
  return blocks;
}

HttpMutator::HttpMutator(HttpMutatorConfig config) : config_(std::move(config)) {
  const auto scheme = config_.base_url.find("://");
  if (scheme == std::string::npos || config_.model.empty()) {
    throw taskbench::ContractError("llm: base URL (scheme://host[:port][/path]) and model are required");
  }
  const auto slash = config_.base_url.find('/', scheme + 3);
  scheme_host_port_ = config_.base_url.substr(0, slash);
  path_prefix_ = slash == std::string::npos ? "" : config_.base_url.substr(slash);
  while (!path_prefix_.empty() && path_prefix_.back() == '/') path_prefix_.pop_back();
  if (config_.max_attempts < 1) config_.max_attempts = 1;
  if (!config_.api_key_env.empty()) {
    const char* token = std::getenv(config_.api_key_env.c_str());
    if (token == nullptr || *token == '\0') {
      throw taskbench::ContractError("llm: environment variable " + config_.api_key_env + " is not set");
    }
  }
}

void HttpMutator::log_exchange(int iteration, int attempt, const std::string& request, int status,
                               const std::string& response) const {
  if (config_.log_dir.empty()) return;
  std::filesystem::create_directories(config_.log_dir);
  nlohmann::json rec{{"iteration", iteration},
                     {"attempt", attempt},
                     {"url", scheme_host_port_ + path_prefix_ + "/chat/completions"},
                     {"headers", {{"Authorization", "Bearer <redacted>"}}},
                     {"request", request},
                     {"status", status},
                     {"response", response}};
  std::string text = rec.dump(2);
  if (const char* token = std::getenv(config_.api_key_env.c_str()); token != nullptr && *token) {
    const std::string t(token);
    for (auto p = text.find(t); p != std::string::npos; p = text.find(t, p)) text.replace(p, t.size(), "<redacted>");
  }
  std::ofstream(config_.log_dir / ("k" + std::to_string(iteration) + "-" + std::to_string(attempt) + ".json"))
      << text << '\n';
}

std::string HttpMutator::propose(const evolve::TaskPrompt& prompt, const evolve::FeedbackPacket& feedback) {
  const nlohmann::json body{
      {"model", config_.model},
      {"temperature", config_.temperature},
      {"messages",
       {{{"role", "system"}, {"content", prompt.text}}, {{"role", "user"}, {"content", feedback.serialize()}}}}};
  const auto request = body.dump();
  requests_.push_back(request);

  httplib::Client client(scheme_host_port_);
  client.set_connection_timeout(config_.timeout);
  client.set_read_timeout(config_.timeout);
  client.set_write_timeout(config_.timeout);
  httplib::Headers headers;
  if (const char* token = std::getenv(config_.api_key_env.c_str()); token != nullptr && *token) {
    headers.emplace("Authorization", std::string("Bearer ") + token);
  }

  std::string last_error;
  for (int attempt = 1; attempt <= config_.max_attempts; ++attempt) {
    if (attempt > 1) std::this_thread::sleep_for(config_.retry_backoff * (1 << (attempt - 2)));
    auto res = client.Post(path_prefix_ + "/chat/completions", headers, request, "application/json");
    if (!res) {
      last_error = "transport error: " + httplib::to_string(res.error());
      log_exchange(feedback.iteration, attempt, request, 0, last_error);
      continue;
    }
    log_exchange(feedback.iteration, attempt, request, res->status, res->body);
    if (res->status == 429 || res->status >= 500) {
      last_error = "HTTP " + std::to_string(res->status);
      continue;
    }
    if (res->status != 200) throw MutatorError("llm endpoint returned HTTP " + std::to_string(res->status));
    std::string content;
    try {
      const auto j = nlohmann::json::parse(res->body);
      content = j.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      throw MutatorError(std::string("unparseable llm response: ") + e.what());
    }
    const auto blocks = extract_code_blocks(content);
    if (blocks.empty()) throw MutatorError("no code block in the response");
    if (blocks.size() > 1) {
      throw MutatorError("expected exactly one fenced code block in the response, found " +
                         std::to_string(blocks.size()));
    }
    return blocks.front();
  }
  throw MutatorError("llm request failed after " + std::to_string(config_.max_attempts) +
                     " attempts (" + last_error + ")");
}

}  // namespace kevo::llm
