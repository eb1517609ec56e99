#pragma once

// Dataset layout: <root>/{train,val,test}/*.json, one canonical graph per
// file. Gold graphs must pass relaxed validation.

#include <algorithm>
#include <array>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "vista/error.hpp"
#include "vista/graph.hpp"
#include "vista/graph_io.hpp"
#include "vista/validate.hpp"

namespace vista {

inline constexpr std::array<std::string_view, 3> kSplitNames = {"train", "val", "test"};

struct DatasetSplits {
  std::vector<NarrativeGraph> train;
  std::vector<NarrativeGraph> val;
  std::vector<NarrativeGraph> test;

  const std::vector<NarrativeGraph>& get(std::string_view name) const {
    if (name == "train") return train;
    if (name == "val") return val;
    if (name == "test") return test;
    throw Error("unknown split '" + std::string(name) + "'");
  }
};

// Reads every *.json file of one directory, sorted by file name.
inline std::vector<NarrativeGraph> load_graph_dir(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) {
    throw DatasetError(DatasetError::Kind::Io, "not a directory: " + dir.string());
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<NarrativeGraph> graphs;
  graphs.reserve(files.size());
  for (const auto& f : files) {
    NarrativeGraph g = read_graph_file(f);
    auto report = validate(g, ValidationMode::Relaxed);
    if (!report.valid()) {
      const auto& v = report.violations.front();
      throw DatasetError(DatasetError::Kind::InvalidGoldGraph,
                         "InvalidGoldGraph(" + g.doc_id + "): anchor " +
                             std::to_string(v.anchor_id) + " " + std::string(to_string(v.kind)) +
                             " in " + f.string());
    }
    graphs.push_back(std::move(g));
  }
  return graphs;
}

inline std::vector<NarrativeGraph> load_split(const std::filesystem::path& root,
                                              std::string_view split) {
  const auto dir = root / std::string(split);
  if (!std::filesystem::is_directory(dir)) {
    throw DatasetError(DatasetError::Kind::MissingSplit,
                       "MissingSplit: " + std::string(split) + " under " + root.string());
  }
  return load_graph_dir(dir);
}

inline DatasetSplits load_dataset(const std::filesystem::path& root) {
  for (auto name : kSplitNames) {
    if (!std::filesystem::is_directory(root / std::string(name))) {
      throw DatasetError(DatasetError::Kind::MissingSplit,
                         "MissingSplit: " + std::string(name) + " under " + root.string());
    }
  }
  DatasetSplits splits;
  splits.train = load_split(root, "train");
  splits.val = load_split(root, "val");
  splits.test = load_split(root, "test");
  return splits;
}

}  // namespace vista
