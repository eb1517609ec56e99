#pragma once

// Model execution and full evaluation runs.
//
// Model config file (JSON):
//   {
//     "name": "gpt-4o",                      model name sent on the wire; cache namespace
//     "backend": "http" | "baseline",        default "http"
//     "provider": "openai" | "anthropic",    header/body adapter, default "openai"
//     "endpoint": "https://host/v1/chat/completions",
//     "api_key_env": "OPENAI_API_KEY",       env var holding the key ("" for none)
//     "temperature": 0.0,
//     "max_output_tokens": 4096,
//     "timeout_seconds": 120,
//     "max_retries": 3,                      retries after the first attempt
//     "backoff_ms": 500,                     base delay, doubled per retry
//     "parallelism": 4,
//     "lexicon": "path/to/lexicon.csv"       baseline backend only, optional
//   }

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "vista/analysis.hpp"
#include "vista/backend.hpp"
#include "vista/cache.hpp"
#include "vista/candidates.hpp"
#include "vista/graph_io.hpp"
#include "vista/prediction_table.hpp"
#include "vista/prompts.hpp"
#include "vista/scoring.hpp"

namespace vista {

class RunnerError : public Error {
 public:
  enum class Kind { Timeout, HttpError, RetriesExhausted };
  RunnerError(Kind kind, int status, const std::string& msg)
      : Error(msg), kind_(kind), status_(status) {}
  Kind kind() const noexcept { return kind_; }
  int status() const noexcept { return status_; }

 private:
  Kind kind_;
  int status_;
};

inline std::string_view to_string(RunnerError::Kind k) noexcept {
  switch (k) {
    case RunnerError::Kind::Timeout: return "Timeout";
    case RunnerError::Kind::HttpError: return "HttpError";
    case RunnerError::Kind::RetriesExhausted: return "RetriesExhausted";
  }
  return "?";
}

struct ModelConfig {
  std::string name;
  std::string backend = "http";
  Provider provider = Provider::OpenAI;
  std::string endpoint;
  std::string api_key_env;
  double temperature = 0.0;
  std::int64_t max_output_tokens = 4096;
  double timeout_seconds = 120.0;
  int max_retries = 3;
  std::int64_t backoff_ms = 500;
  int parallelism = 1;
  std::string lexicon;

  void check() const {
    if (name.empty()) throw Error("model config: name is required");
    if (!(temperature >= 0.0)) throw Error("model config: temperature must be >= 0");
    if (parallelism < 1) throw Error("model config: parallelism must be >= 1");
    if (max_retries < 0) throw Error("model config: max_retries must be >= 0");
    if (max_output_tokens < 1) throw Error("model config: max_output_tokens must be >= 1");
    if (!(timeout_seconds > 0.0)) throw Error("model config: timeout_seconds must be > 0");
    if (backoff_ms < 0) throw Error("model config: backoff_ms must be >= 0");
    if (backend != "http" && backend != "baseline") {
      throw Error("model config: unknown backend '" + backend + "'");
    }
    if (backend == "http" && endpoint.empty()) throw Error("model config: endpoint is required");
  }
};

inline nlohmann::ordered_json to_json(const ModelConfig& c) {
  nlohmann::ordered_json j;
  j["name"] = c.name;
  j["backend"] = c.backend;
  j["provider"] = std::string(to_string(c.provider));
  j["endpoint"] = c.endpoint;
  j["api_key_env"] = c.api_key_env;
  j["temperature"] = c.temperature;
  j["max_output_tokens"] = c.max_output_tokens;
  j["timeout_seconds"] = c.timeout_seconds;
  j["max_retries"] = c.max_retries;
  j["backoff_ms"] = c.backoff_ms;
  j["parallelism"] = c.parallelism;
  if (!c.lexicon.empty()) j["lexicon"] = c.lexicon;
  return j;
}

inline ModelConfig model_config_from_json(const nlohmann::json& j) {
  ModelConfig c;
  try {
    c.name = j.at("name").get<std::string>();
    c.backend = j.value("backend", c.backend);
    const auto provider = j.value("provider", std::string("openai"));
    auto p = parse_provider(provider);
    if (!p) throw Error("model config: unknown provider '" + provider + "'");
    c.provider = *p;
    c.endpoint = j.value("endpoint", c.endpoint);
    c.api_key_env = j.value("api_key_env", c.api_key_env);
    c.temperature = j.value("temperature", c.temperature);
    c.max_output_tokens = j.value("max_output_tokens", c.max_output_tokens);
    c.timeout_seconds = j.value("timeout_seconds", c.timeout_seconds);
    c.max_retries = j.value("max_retries", c.max_retries);
    c.backoff_ms = j.value("backoff_ms", c.backoff_ms);
    c.parallelism = j.value("parallelism", c.parallelism);
    c.lexicon = j.value("lexicon", c.lexicon);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("model config: ") + e.what());
  }
  c.check();
  return c;
}

inline ModelConfig load_model_config(const std::filesystem::path& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw Error("model config " + path.string() + ": " + e.what());
  }
  return model_config_from_json(j);
}

inline std::unique_ptr<ChatBackend> make_backend(const ModelConfig& cfg) {
  if (cfg.backend == "baseline") {
    std::optional<LexicalRoleStats> lex;
    if (!cfg.lexicon.empty()) lex = parse_lexicon_csv(read_file(cfg.lexicon));
    return std::make_unique<BaselineBackend>(std::move(lex));
  }
  std::string key;
  if (!cfg.api_key_env.empty()) {
    if (const char* v = std::getenv(cfg.api_key_env.c_str())) key = v;
  }
  return std::make_unique<HttpChatBackend>(cfg.endpoint, cfg.provider, std::move(key));
}

// ---------------------------------------------------------------------------
// execute

struct ExecuteResult {
  std::string text;
  bool from_cache = false;
  int attempts = 0;
};

namespace detail {

inline bool is_transient_status(int status) noexcept { return status == 429 || status >= 500; }

inline bool rejects_temperature(const ChatResponse& r) {
  return r.status == 400 && r.body.find("temperature") != std::string::npos;
}

}  // namespace detail

inline ExecuteResult execute(const ModelConfig& cfg, ChatBackend& backend, const std::string& prompt,
                             const DocContext& ctx, const ResponseCache* cache = nullptr) {
  const std::string key = cache_key(cfg.name, prompt);
  if (cache) {
    if (auto hit = cache->lookup(key)) return {hit->response, true, 0};
  }
  ChatRequest req;
  req.model = cfg.name;
  req.prompt = prompt;
  req.temperature = cfg.temperature;
  req.max_output_tokens = cfg.max_output_tokens;
  req.timeout = std::chrono::milliseconds(static_cast<std::int64_t>(cfg.timeout_seconds * 1000.0));

  int attempts = 0;
  int failures = 0;
  bool all_timeouts = true;
  bool temperature_omitted = false;
  std::string last_error;
  while (failures <= cfg.max_retries) {
    ++attempts;
    std::optional<ChatResponse> resp;
    try {
      resp = backend.send(req, ctx);
    } catch (const TransportError& e) {
      if (e.kind() != TransportError::Kind::Timeout) all_timeouts = false;
      last_error = e.what();
    }
    if (resp) {
      if (resp->status >= 200 && resp->status < 300) {
        if (cache) {
          CacheRecord rec{key, cfg.name, resp->text, nlohmann::ordered_json::object()};
          rec.metadata["status"] = resp->status;
          rec.metadata["attempts"] = attempts;
          rec.metadata["temperature_omitted"] = temperature_omitted;
          cache->store(rec);
        }
        return {resp->text, false, attempts};
      }
      if (!temperature_omitted && req.temperature && detail::rejects_temperature(*resp)) {
        temperature_omitted = true;
        req.temperature.reset();
        continue;
      }
      if (!detail::is_transient_status(resp->status)) {
        throw RunnerError(RunnerError::Kind::HttpError, resp->status,
                          "HttpError(" + std::to_string(resp->status) + ")");
      }
      all_timeouts = false;
      last_error = "HTTP " + std::to_string(resp->status);
    }
    ++failures;
    if (failures <= cfg.max_retries && cfg.backoff_ms > 0) {
      const auto delay = cfg.backoff_ms * (std::int64_t{1} << std::min(failures - 1, 20));
      std::this_thread::sleep_for(std::chrono::milliseconds(delay));
    }
  }
  if (all_timeouts) {
    throw RunnerError(RunnerError::Kind::Timeout, 0,
                      "Timeout after " + std::to_string(attempts) + " attempts");
  }
  throw RunnerError(RunnerError::Kind::RetriesExhausted, 0,
                    "RetriesExhausted after " + std::to_string(attempts) +
                        " attempts; last error: " + last_error);
}

// ---------------------------------------------------------------------------
// Runs

enum class RunMode { Oracle, EndToEnd };

inline std::string_view to_string(RunMode m) noexcept {
  return m == RunMode::Oracle ? "oracle" : "end_to_end";
}

inline std::optional<RunMode> parse_run_mode(std::string_view s) {
  if (s == "oracle") return RunMode::Oracle;
  if (s == "e2e" || s == "end_to_end") return RunMode::EndToEnd;
  return std::nullopt;
}

enum class DocStatusKind { Cached, Fetched, Failed };

inline std::string_view to_string(DocStatusKind k) noexcept {
  switch (k) {
    case DocStatusKind::Cached: return "cached";
    case DocStatusKind::Fetched: return "fetched";
    case DocStatusKind::Failed: return "failed";
  }
  return "?";
}

struct DocStatus {
  std::string doc_id;
  DocStatusKind status = DocStatusKind::Failed;
  int attempts = 0;
  std::string error;
};

struct RunManifest {
  std::string run_id;
  RunMode mode = RunMode::Oracle;
  std::string split;
  ModelConfig config;
  std::vector<DocStatus> docs;  // gold order
  std::string started_at;
  std::string finished_at;
};

inline std::string iso_timestamp(std::chrono::system_clock::time_point t) {
  const std::time_t tt = std::chrono::system_clock::to_time_t(t);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline nlohmann::ordered_json to_json(const RunManifest& m) {
  nlohmann::ordered_json j;
  j["run_id"] = m.run_id;
  j["mode"] = std::string(to_string(m.mode));
  j["split"] = m.split;
  j["model_config"] = to_json(m.config);
  j["started_at"] = m.started_at;
  j["finished_at"] = m.finished_at;
  auto docs = nlohmann::ordered_json::array();
  for (const auto& d : m.docs) {
    nlohmann::ordered_json e;
    e["doc_id"] = d.doc_id;
    e["status"] = std::string(to_string(d.status));
    e["attempts"] = d.attempts;
    if (!d.error.empty()) e["error"] = d.error;
    docs.push_back(std::move(e));
  }
  j["documents"] = std::move(docs);
  return j;
}

struct RunOptions {
  RunMode mode = RunMode::Oracle;
  MatchConfig match;
  std::string split = "test";
  std::optional<std::filesystem::path> cache_dir;
  std::optional<std::filesystem::path> out_dir;  // raw/, predictions/, manifest.json, scores.json
  std::optional<int> jobs;                       // caps cfg.parallelism
  std::string run_id;                            // generated when empty
};

struct RunOutput {
  RunManifest manifest;
  std::map<std::string, PredictionRows> predictions;
  EvalResult result;
};

inline std::string safe_file_stem(std::string_view id) {
  std::string out;
  for (char c : id) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                    c == '.' || c == '-' || c == '_';
    out += ok ? c : '_';
  }
  if (out.empty() || out == "." || out == "..") out = "_" + out;
  return out;
}

inline RunOutput run_evaluation(const std::vector<NarrativeGraph>& gold, const ModelConfig& cfg,
                                ChatBackend& backend, const RunOptions& opts = RunOptions{}) {
  const auto started = std::chrono::system_clock::now();
  std::optional<ResponseCache> cache;
  if (opts.cache_dir) cache.emplace(*opts.cache_dir);

  const std::size_t n = gold.size();
  std::vector<DocStatus> statuses(n);
  std::vector<PredictionRows> rows(n);
  std::vector<std::string> raw(n);

  auto process = [&](std::size_t i) {
    const NarrativeGraph& g = gold[i];
    DocStatus& st = statuses[i];
    st.doc_id = g.doc_id;
    try {
      DocContext ctx{g.doc_id, g.text, std::nullopt};
      std::string prompt;
      if (opts.mode == RunMode::Oracle) {
        ctx.candidates = candidates_from_graph(g);
        prompt = build_oracle_prompt(g.text, *ctx.candidates);
      } else {
        prompt = build_e2e_prompt(g.text);
      }
      auto res = execute(cfg, backend, prompt, ctx, cache ? &*cache : nullptr);
      st.status = res.from_cache ? DocStatusKind::Cached : DocStatusKind::Fetched;
      st.attempts = res.attempts;
      raw[i] = std::move(res.text);
      rows[i] = parse_model_output_tolerant(raw[i]).rows;
    } catch (const RunnerError& e) {
      st.status = DocStatusKind::Failed;
      st.error = e.what();
    } catch (const std::exception& e) {
      st.status = DocStatusKind::Failed;
      st.error = e.what();
    }
  };

  int workers = cfg.parallelism;
  if (opts.jobs) workers = std::min(workers, std::max(1, *opts.jobs));
  workers = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(workers), std::max<std::size_t>(n, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) process(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) process(i);
      });
    }
  }  // join

  RunOutput out;
  for (std::size_t i = 0; i < n; ++i) {
    if (statuses[i].status != DocStatusKind::Failed) out.predictions[gold[i].doc_id] = rows[i];
  }
  out.result = score_run(out.predictions, gold, opts.match);

  RunManifest& m = out.manifest;
  m.mode = opts.mode;
  m.split = opts.split;
  m.config = cfg;
  m.docs = std::move(statuses);
  m.started_at = iso_timestamp(started);
  m.finished_at = iso_timestamp(std::chrono::system_clock::now());
  m.run_id = !opts.run_id.empty() ? opts.run_id
                                  : safe_file_stem(cfg.name) + "-" + std::string(to_string(opts.mode)) +
                                        "-" + opts.split + "-" +
                                        std::to_string(std::chrono::duration_cast<std::chrono::seconds>(
                                                           started.time_since_epoch())
                                                           .count());

  if (opts.out_dir) {
    const auto& dir = *opts.out_dir;
    for (std::size_t i = 0; i < n; ++i) {
      if (m.docs[i].status == DocStatusKind::Failed) continue;
      const auto stem = safe_file_stem(gold[i].doc_id);
      write_file(dir / "raw" / (stem + ".txt"), raw[i]);
      write_file(dir / "predictions" / (stem + ".tsv"), serialize_prediction_table(rows[i]));
    }
    write_file(dir / "manifest.json", to_json(m).dump(2) + "\n");
    write_file(dir / "scores.json", to_json(out.result).dump(2) + "\n");
  }
  return out;
}

}  // namespace vista
