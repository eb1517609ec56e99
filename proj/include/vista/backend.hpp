#pragma once

// Chat-completion backends. A backend sends one request and reports what came
// back; retry and cache policy live in the runner.

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include "httplib.h"
#include "json.hpp"

#include "vista/analysis.hpp"
#include "vista/baseline.hpp"
#include "vista/candidates.hpp"
#include "vista/error.hpp"

namespace vista {

enum class Provider { OpenAI, Anthropic };

inline std::optional<Provider> parse_provider(std::string_view s) {
  if (s == "openai") return Provider::OpenAI;
  if (s == "anthropic") return Provider::Anthropic;
  return std::nullopt;
}

inline std::string_view to_string(Provider p) noexcept {
  return p == Provider::OpenAI ? "openai" : "anthropic";
}

struct ChatRequest {
  std::string model;
  std::string prompt;
  std::optional<double> temperature;  // nullopt: field omitted
  std::int64_t max_output_tokens = 4096;
  std::chrono::milliseconds timeout{120000};
};

// Per-document context, used by backends that do not call a model.
struct DocContext {
  std::string doc_id;
  std::string text;
  std::optional<CandidateList> candidates;
};

struct ChatResponse {
  int status = 200;
  std::string body;  // raw HTTP body
  std::string text;  // extracted completion text
};

// Raised by a backend when no HTTP status was obtained.
class TransportError : public Error {
 public:
  enum class Kind { Network, Timeout };
  TransportError(Kind kind, const std::string& msg) : Error(msg), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

class ChatBackend {
 public:
  virtual ~ChatBackend() = default;
  virtual ChatResponse send(const ChatRequest& req, const DocContext& ctx) = 0;
  virtual bool uses_network() const noexcept { return false; }
  std::int64_t calls() const noexcept { return calls_.load(); }

 protected:
  std::atomic<std::int64_t> calls_{0};
};

// ---------------------------------------------------------------------------
// HTTP

struct EndpointUrl {
  std::string scheme_host_port;  // "https://api.example.com:443"
  std::string path;              // "/v1/chat/completions"
};

inline EndpointUrl split_endpoint(std::string_view url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string_view::npos) throw Error("endpoint lacks a scheme: " + std::string(url));
  const auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string_view::npos) return {std::string(url), "/"};
  return {std::string(url.substr(0, path_start)), std::string(url.substr(path_start))};
}

inline nlohmann::ordered_json chat_request_body(Provider provider, const ChatRequest& req) {
  nlohmann::ordered_json body;
  body["model"] = req.model;
  if (provider == Provider::Anthropic) body["max_tokens"] = req.max_output_tokens;
  body["messages"] = nlohmann::ordered_json::array(
      {nlohmann::ordered_json{{"role", "user"}, {"content", req.prompt}}});
  if (req.temperature) body["temperature"] = *req.temperature;
  if (provider == Provider::OpenAI) body["max_tokens"] = req.max_output_tokens;
  return body;
}

// Pulls the completion text out of a provider response body. Falls back to
// the raw body when the shape is unrecognised.
inline std::string extract_completion_text(Provider provider, std::string_view body) {
  try {
    const auto j = nlohmann::json::parse(body);
    if (provider == Provider::OpenAI) {
      return j.at("choices").at(0).at("message").at("content").get<std::string>();
    }
    std::string out;
    for (const auto& block : j.at("content")) {
      if (block.value("type", "") == "text") out += block.at("text").get<std::string>();
    }
    return out;
  } catch (const std::exception&) {
    return std::string(body);
  }
}

class HttpChatBackend : public ChatBackend {
 public:
  HttpChatBackend(std::string endpoint, Provider provider, std::string api_key)
      : endpoint_(std::move(endpoint)), provider_(provider), api_key_(std::move(api_key)) {}

  bool uses_network() const noexcept override { return true; }

  ChatResponse send(const ChatRequest& req, const DocContext&) override {
    ++calls_;
    const auto url = split_endpoint(endpoint_);
    httplib::Client client(url.scheme_host_port);
    const auto secs = std::chrono::duration_cast<std::chrono::seconds>(req.timeout);
    const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(req.timeout - secs);
    client.set_connection_timeout(secs.count(), usecs.count());
    client.set_read_timeout(secs.count(), usecs.count());
    client.set_write_timeout(secs.count(), usecs.count());

    httplib::Headers headers;
    if (provider_ == Provider::Anthropic) {
      headers.emplace("x-api-key", api_key_);
      headers.emplace("anthropic-version", "2023-06-01");
    } else if (!api_key_.empty()) {
      headers.emplace("Authorization", "Bearer " + api_key_);
    }
    const auto started = std::chrono::steady_clock::now();
    auto res = client.Post(url.path, headers, chat_request_body(provider_, req).dump(),
                           "application/json");
    if (!res) {
      const auto err = res.error();
      const bool timed_out =
          err == httplib::Error::ConnectionTimeout ||
          (err == httplib::Error::Read && std::chrono::steady_clock::now() - started >= req.timeout);
      throw TransportError(timed_out ? TransportError::Kind::Timeout : TransportError::Kind::Network,
                           "request to " + endpoint_ + " failed: " + httplib::to_string(err));
    }
    ChatResponse out;
    out.status = res->status;
    out.body = res->body;
    if (res->status >= 200 && res->status < 300) out.text = extract_completion_text(provider_, res->body);
    return out;
  }

 private:
  std::string endpoint_;
  Provider provider_;
  std::string api_key_;
};

// ---------------------------------------------------------------------------
// Local backends

// Answers with the heuristic baseline's table; never touches the network.
class BaselineBackend : public ChatBackend {
 public:
  explicit BaselineBackend(std::optional<LexicalRoleStats> lexicon = std::nullopt)
      : lexicon_(std::move(lexicon)) {}

  ChatResponse send(const ChatRequest&, const DocContext& ctx) override {
    ++calls_;
    const auto rows = heuristic_baseline(ctx.text, ctx.candidates, lexicon_ ? &*lexicon_ : nullptr);
    ChatResponse out;
    out.text = serialize_prediction_table(rows);
    out.body = out.text;
    return out;
  }

 private:
  std::optional<LexicalRoleStats> lexicon_;
};

// Replays canned completion text keyed by document id. Unknown documents get
// an empty completion.
class ReplayBackend : public ChatBackend {
 public:
  explicit ReplayBackend(std::map<std::string, std::string> responses)
      : responses_(std::move(responses)) {}

  ChatResponse send(const ChatRequest&, const DocContext& ctx) override {
    ++calls_;
    ChatResponse out;
    if (auto it = responses_.find(ctx.doc_id); it != responses_.end()) out.text = it->second;
    out.body = out.text;
    return out;
  }

 private:
  std::map<std::string, std::string> responses_;
};

// Delegates to a callable; handy for scripted failure sequences.
class FunctionBackend : public ChatBackend {
 public:
  using Fn = std::function<ChatResponse(const ChatRequest&, const DocContext&)>;
  explicit FunctionBackend(Fn fn) : fn_(std::move(fn)) {}

  ChatResponse send(const ChatRequest& req, const DocContext& ctx) override {
    ++calls_;
    return fn_(req, ctx);
  }

 private:
  Fn fn_;
};

}  // namespace vista
