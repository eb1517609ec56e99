#pragma once

// Content-addressed response cache. One JSON file per key:
//   <dir>/<sha256(model '\0' prompt)>.json  {"key","model","response","metadata"}
// Writes go to a unique temp file and are renamed into place.

#include <atomic>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <thread>

#include "json.hpp"

#include "vista/digest.hpp"
#include "vista/error.hpp"
#include "vista/graph_io.hpp"

namespace vista {

struct CacheRecord {
  std::string key;
  std::string model;
  std::string response;
  nlohmann::ordered_json metadata = nlohmann::ordered_json::object();
};

inline std::string cache_key(std::string_view model, std::string_view prompt) {
  std::string material(model);
  material += '\0';
  material.append(prompt);
  return sha256_hex(material);
}

class ResponseCache {
 public:
  explicit ResponseCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  const std::filesystem::path& dir() const noexcept { return dir_; }

  std::filesystem::path path_for(const std::string& key) const { return dir_ / (key + ".json"); }

  std::optional<CacheRecord> lookup(const std::string& key) const {
    const auto p = path_for(key);
    std::error_code ec;
    if (!std::filesystem::is_regular_file(p, ec)) return std::nullopt;
    try {
      const auto j = nlohmann::json::parse(read_file(p));
      CacheRecord r;
      r.key = j.at("key").get<std::string>();
      r.model = j.at("model").get<std::string>();
      r.response = j.at("response").get<std::string>();
      if (j.contains("metadata")) r.metadata = j.at("metadata");
      if (r.key != key) return std::nullopt;
      return r;
    } catch (const std::exception&) {
      return std::nullopt;  // unreadable entries are treated as misses and overwritten
    }
  }

  void store(const CacheRecord& rec) const {
    std::filesystem::create_directories(dir_);
    nlohmann::ordered_json j;
    j["key"] = rec.key;
    j["model"] = rec.model;
    j["response"] = rec.response;
    j["metadata"] = rec.metadata;
    static std::atomic<unsigned long> counter{0};
    const auto tmp = dir_ / (rec.key + ".tmp." +
                             std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id())) +
                             "." + std::to_string(counter++));
    write_file(tmp, j.dump(2) + "\n");
    std::error_code ec;
    std::filesystem::rename(tmp, path_for(rec.key), ec);
    if (ec) {
      std::filesystem::remove(tmp, ec);
      throw IoError("cache write failed for " + rec.key);
    }
  }

 private:
  std::filesystem::path dir_;
};

}  // namespace vista
