#pragma once

#include <chrono>
#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "amrs3/prompts.hpp"

namespace amrs3 {

struct LlmConfig {
  /// Base URL of an OpenAI-compatible API, e.g. http://localhost:8000/v1.
  std::string endpoint;
  std::string model;
  /// Name of the environment variable holding the API key. The key itself is
  /// never stored in configuration.
  std::string api_key_env = "OPENAI_API_KEY";
  double timeout_seconds = 60.0;
  std::size_t max_concurrent = 4;
  double temperature = 0.0;
  int max_attempts = 3;
  double retry_base_delay_seconds = 1.0;
};

/// Chat-completion client. Safe to share between threads; at most
/// `max_concurrent` requests are in flight at any time.
class LlmClient {
 public:
  /// Throws invalid_argument for a bad endpoint, zero concurrency or a
  /// non-positive timeout.
  explicit LlmClient(LlmConfig config);
  ~LlmClient();
  LlmClient(const LlmClient&) = delete;
  LlmClient& operator=(const LlmClient&) = delete;

  /// Content of the first choice. Retries HTTP 429/5xx and transport failures
  /// with exponential backoff; throws authentication (401/403, no retry),
  /// network or http after the last attempt, malformed_response for bodies
  /// without choices[0].message.content.
  std::string complete(const std::vector<ChatMessage>& messages) const;
  std::string complete(const PromptPayload& payload) const;

  const LlmConfig& config() const { return config_; }

  /// JSON body sent to {endpoint}/chat/completions.
  static std::string request_body(const LlmConfig& config, const std::vector<ChatMessage>& messages);

 private:
  struct Impl;
  LlmConfig config_;
  std::unique_ptr<Impl> impl_;
};

}  // namespace amrs3
