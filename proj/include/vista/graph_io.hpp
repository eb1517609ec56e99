#pragma once

// Canonical on-disk graph files: one JSON object per document,
//
//   {"doc_id": "...", "text": "...",
//    "anchors": [{"id": 0, "start": 64, "end": 69, "word": "tired",
//                 "role": "Impulse", "head": -1}, ...]}

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "vista/graph.hpp"

namespace vista {

inline nlohmann::ordered_json to_json(const NarrativeGraph& g) {
  nlohmann::ordered_json anchors = nlohmann::ordered_json::array();
  for (const Anchor& a : g.anchors) {
    anchors.push_back({{"id", a.id},
                       {"start", a.span.start},
                       {"end", a.span.end},
                       {"word", a.word},
                       {"role", std::string(to_string(a.role))},
                       {"head", a.head}});
  }
  return {{"doc_id", g.doc_id}, {"text", g.text}, {"anchors", std::move(anchors)}};
}

inline NarrativeGraph graph_from_json(const nlohmann::json& j) {
  using Kind = FormatError::Kind;
  try {
    NarrativeGraph g;
    g.doc_id = j.at("doc_id").get<std::string>();
    g.text = j.at("text").get<std::string>();
    for (const auto& ja : j.at("anchors")) {
      Anchor a;
      a.id = ja.at("id").get<std::int64_t>();
      a.span.start = ja.at("start").get<std::int64_t>();
      a.span.end = ja.at("end").get<std::int64_t>();
      a.word = ja.at("word").get<std::string>();
      const auto role_name = ja.at("role").get<std::string>();
      const auto role = parse_role(role_name);
      if (!role || role_name != to_string(*role)) {
        throw FormatError(Kind::MalformedGraphFile, 0, "unknown role '" + role_name + "'");
      }
      a.role = *role;
      a.head = ja.value("head", kRootHead);
      g.anchors.push_back(std::move(a));
    }
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(Kind::MalformedGraphFile, 0, e.what());
  }
}

inline NarrativeGraph parse_graph(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(FormatError::Kind::MalformedGraphFile, 0, e.what());
  }
  return graph_from_json(j);
}

inline std::string serialize_graph(const NarrativeGraph& g) { return to_json(g).dump(2) + "\n"; }

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

inline NarrativeGraph read_graph_file(const std::filesystem::path& path) {
  try {
    return parse_graph(read_file(path));
  } catch (const FormatError& e) {
    throw FormatError(e.kind(), 0, path.string() + ": " + e.what());
  }
}

}  // namespace vista
