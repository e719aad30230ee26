#include "amrs3/llm_client.hpp"

#include <cstdlib>
#include <semaphore>
#include <thread>

#include "httplib.h"
#include "json.hpp"

#include "amrs3/error.hpp"

namespace amrs3 {

namespace {

struct ParsedUrl {
  std::string scheme;
  std::string host;
  int port = 0;
  std::string base_path;
};

ParsedUrl parse_url(const std::string& url) {
  ParsedUrl u;
  auto sep = url.find("://");
  if (sep == std::string::npos) throw Error(ErrorCode::invalid_argument, "endpoint '" + url + "' has no scheme");
  u.scheme = url.substr(0, sep);
  if (u.scheme != "http" && u.scheme != "https") {
    throw Error(ErrorCode::invalid_argument, "unsupported endpoint scheme '" + u.scheme + "'");
  }
  std::string rest = url.substr(sep + 3);
  auto slash = rest.find('/');
  std::string authority = rest.substr(0, slash);
  u.base_path = slash == std::string::npos ? "" : rest.substr(slash);
  while (!u.base_path.empty() && u.base_path.back() == '/') u.base_path.pop_back();
  if (auto at = authority.rfind('@'); at != std::string::npos) authority = authority.substr(at + 1);
  auto colon = authority.rfind(':');
  if (colon != std::string::npos && authority.find(']') == std::string::npos) {
    u.host = authority.substr(0, colon);
    try {
      u.port = std::stoi(authority.substr(colon + 1));
    } catch (const std::exception&) {
      throw Error(ErrorCode::invalid_argument, "bad port in '" + url + "'");
    }
  } else {
    u.host = authority;
    u.port = u.scheme == "https" ? 443 : 80;
  }
  if (u.host.empty()) throw Error(ErrorCode::invalid_argument, "endpoint '" + url + "' has no host");
  return u;
}

const char* env(const char* name) {
  const char* v = std::getenv(name);
  return v && *v ? v : nullptr;
}

bool bypass_proxy(const std::string& host) {
  const char* no_proxy = env("NO_PROXY");
  if (!no_proxy) no_proxy = env("no_proxy");
  if (!no_proxy) return false;
  std::string list(no_proxy);
  std::size_t start = 0;
  while (start <= list.size()) {
    auto comma = list.find(',', start);
    std::string item = list.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    while (!item.empty() && item.front() == ' ') item.erase(item.begin());
    while (!item.empty() && item.back() == ' ') item.pop_back();
    if (item == "*") return true;
    if (!item.empty()) {
      if (item.front() == '.') item.erase(item.begin());
      if (host == item || (host.size() > item.size() && host.ends_with("." + item))) return true;
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return false;
}

std::optional<ParsedUrl> proxy_for(const ParsedUrl& target) {
  if (bypass_proxy(target.host)) return std::nullopt;
  const char* p = target.scheme == "https" ? (env("HTTPS_PROXY") ? env("HTTPS_PROXY") : env("https_proxy"))
                                           : (env("HTTP_PROXY") ? env("HTTP_PROXY") : env("http_proxy"));
  if (!p) return std::nullopt;
  std::string s(p);
  if (s.find("://") == std::string::npos) s = "http://" + s;
  try {
    return parse_url(s);
  } catch (const Error&) {
    return std::nullopt;
  }
}

bool retryable(int status) { return status == 429 || (status >= 500 && status <= 599); }

}  // namespace

struct LlmClient::Impl {
  explicit Impl(std::size_t slots) : slots(static_cast<std::ptrdiff_t>(slots)) {}
  ParsedUrl url;
  std::optional<ParsedUrl> proxy;
  mutable std::counting_semaphore<1 << 20> slots;
};

LlmClient::LlmClient(LlmConfig config) : config_(std::move(config)) {
  if (config_.max_concurrent < 1) throw Error(ErrorCode::invalid_argument, "max concurrent requests must be >= 1");
  if (!(config_.timeout_seconds > 0)) throw Error(ErrorCode::invalid_argument, "timeout must be positive");
  if (config_.max_attempts < 1) throw Error(ErrorCode::invalid_argument, "max attempts must be >= 1");
  if (config_.max_concurrent > (1u << 20)) config_.max_concurrent = 1u << 20;
  impl_ = std::make_unique<Impl>(config_.max_concurrent);
  impl_->url = parse_url(config_.endpoint);
  impl_->proxy = proxy_for(impl_->url);
}

LlmClient::~LlmClient() = default;

std::string LlmClient::request_body(const LlmConfig& config, const std::vector<ChatMessage>& messages) {
  nlohmann::ordered_json body;
  body["model"] = config.model;
  body["messages"] = nlohmann::ordered_json::array();
  for (const auto& m : messages) body["messages"].push_back({{"role", m.role}, {"content", m.content}});
  body["temperature"] = config.temperature;
  return body.dump(-1, ' ', false, nlohmann::ordered_json::error_handler_t::replace);
}

std::string LlmClient::complete(const PromptPayload& payload) const {
  return complete(to_messages(payload));
}

std::string LlmClient::complete(const std::vector<ChatMessage>& messages) const {
  const ParsedUrl& u = impl_->url;
  const std::string body = request_body(config_, messages);
  const std::string path = u.base_path + "/chat/completions";

  httplib::Headers headers;
  if (const char* key = env(config_.api_key_env.c_str())) {
    headers.emplace("Authorization", std::string("Bearer ") + key);
  }

  auto seconds = static_cast<time_t>(config_.timeout_seconds);
  auto usec = static_cast<time_t>((config_.timeout_seconds - static_cast<double>(seconds)) * 1e6);

  std::string last_failure;
  for (int attempt = 1; attempt <= config_.max_attempts; ++attempt) {
    if (attempt > 1) {
      double delay = config_.retry_base_delay_seconds * static_cast<double>(1 << (attempt - 2));
      std::this_thread::sleep_for(std::chrono::duration<double>(delay));
    }

    httplib::Result res{nullptr, httplib::Error::Unknown};
    {
      impl_->slots.acquire();
      struct Release {
        std::counting_semaphore<1 << 20>& s;
        ~Release() { s.release(); }
      } release{impl_->slots};

      httplib::Client cli(u.scheme + "://" + u.host + ":" + std::to_string(u.port));
      cli.set_connection_timeout(seconds, usec);
      cli.set_read_timeout(seconds, usec);
      cli.set_write_timeout(seconds, usec);
      if (impl_->proxy) cli.set_proxy(impl_->proxy->host, impl_->proxy->port);
      res = cli.Post(path, headers, body, "application/json");
    }

    if (!res) {
      last_failure = "transport error: " + httplib::to_string(res.error());
      continue;
    }
    int status = res->status;
    if (status == 401 || status == 403) {
      throw Error(ErrorCode::authentication,
                  "endpoint rejected credentials (HTTP " + std::to_string(status) + "); set $" +
                      config_.api_key_env);
    }
    if (retryable(status)) {
      last_failure = "HTTP " + std::to_string(status);
      continue;
    }
    if (status < 200 || status >= 300) {
      throw Error(ErrorCode::http, "HTTP " + std::to_string(status) + ": " + res->body.substr(0, 200));
    }

    nlohmann::json j = nlohmann::json::parse(res->body, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) throw Error(ErrorCode::malformed_response, "response body is not JSON");
    try {
      const auto& content = j.at("choices").at(0).at("message").at("content");
      if (!content.is_string()) throw Error(ErrorCode::malformed_response, "message content is not a string");
      return content.get<std::string>();
    } catch (const nlohmann::json::exception&) {
      throw Error(ErrorCode::malformed_response, "response has no choices[0].message.content");
    }
  }
  bool transport = last_failure.starts_with("transport");
  throw Error(transport ? ErrorCode::network : ErrorCode::http,
              "request failed after " + std::to_string(config_.max_attempts) + " attempts (" + last_failure + ")");
}

}  // namespace amrs3
