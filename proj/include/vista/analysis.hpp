#pragma once

// Corpus-level analyses: split statistics, dependency distance histograms,
// lexical role preferences and per-document story shapes. All reductions are
// sums over documents, so results do not depend on document order.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "vista/graph.hpp"
#include "vista/prediction_table.hpp"
#include "vista/scoring.hpp"
#include "vista/topology.hpp"

namespace vista {

inline std::string csv_escape(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// ---------------------------------------------------------------------------
// Corpus statistics

struct CorpusStats {
  std::size_t documents = 0;
  double avg_length_tokens = 0.0;  // whitespace tokens of the stored text
  double avg_count_impulse = 0.0;
  double avg_count_resonance = 0.0;
  double avg_count_pause = 0.0;
  double avg_cross_dep = 0.0;
};

inline std::size_t whitespace_token_count(std::string_view text) {
  std::size_t n = 0;
  bool in_token = false;
  for (char c : text) {
    const bool space = std::isspace(static_cast<unsigned char>(c)) != 0;
    if (!space && !in_token) ++n;
    in_token = !space;
  }
  return n;
}

inline CorpusStats corpus_stats(const std::vector<NarrativeGraph>& split,
                                CrossDefinition cross = CrossDefinition::crossing()) {
  CorpusStats s;
  s.documents = split.size();
  if (split.empty()) return s;
  double tokens = 0, imp = 0, res = 0, pau = 0, crossings = 0;
  for (const auto& g : split) {
    crossings += static_cast<double>(cross_dependency_count(g, cross));  // validates
    tokens += static_cast<double>(whitespace_token_count(g.text));
    imp += static_cast<double>(g.count(Role::Impulse));
    res += static_cast<double>(g.count(Role::Resonance));
    pau += static_cast<double>(g.count(Role::Pause));
  }
  const auto n = static_cast<double>(split.size());
  s.avg_length_tokens = tokens / n;
  s.avg_count_impulse = imp / n;
  s.avg_count_resonance = res / n;
  s.avg_count_pause = pau / n;
  s.avg_cross_dep = crossings / n;
  return s;
}

inline constexpr std::string_view kCorpusStatsCsvHeader =
    "split,documents,avg_length_tokens,avg_impulse,avg_resonance,avg_pause,avg_cross_dep";

inline std::string corpus_stats_csv_row(std::string_view split, const CorpusStats& s) {
  return std::string(split) + "," + std::to_string(s.documents) + "," +
         format_fixed(s.avg_length_tokens) + "," + format_fixed(s.avg_count_impulse) + "," +
         format_fixed(s.avg_count_resonance) + "," + format_fixed(s.avg_count_pause) + "," +
         format_fixed(s.avg_cross_dep);
}

// ---------------------------------------------------------------------------
// Dependency distance histogram

enum class DistanceClassifier { ChildRole, RolePair };

inline const std::vector<std::int64_t>& default_bucket_edges() {
  static const std::vector<std::int64_t> edges = {0, 10, 50, 100, 500, 1000, 5000};
  return edges;
}

struct DistanceTable {
  std::vector<std::int64_t> bucket_edges;  // bucket i = [edges[i], edges[i+1]), last open
  std::vector<std::string> row_labels;
  std::vector<std::vector<std::int64_t>> cells;  // [row][bucket]

  std::size_t bucket_count() const noexcept { return bucket_edges.size(); }

  std::string bucket_label(std::size_t i) const {
    if (i + 1 == bucket_edges.size()) return std::to_string(bucket_edges[i]) + "+";
    return std::to_string(bucket_edges[i]) + "-" + std::to_string(bucket_edges[i + 1]);
  }

  std::int64_t total() const noexcept {
    std::int64_t t = 0;
    for (const auto& row : cells) {
      for (auto c : row) t += c;
    }
    return t;
  }
};

inline DistanceTable distance_histogram(const std::vector<NarrativeGraph>& graphs,
                                        std::vector<std::int64_t> bucket_edges,
                                        DistanceClassifier classify) {
  if (bucket_edges.empty() || bucket_edges.front() != 0) {
    throw Error("bucket edges must start at 0");
  }
  for (std::size_t i = 1; i < bucket_edges.size(); ++i) {
    if (bucket_edges[i] <= bucket_edges[i - 1]) {
      throw Error("bucket edges must be strictly increasing");
    }
  }
  DistanceTable table;
  table.bucket_edges = std::move(bucket_edges);
  std::map<std::pair<Role, Role>, std::size_t> row_of;
  for (Role child : kEventRoles) {
    if (classify == DistanceClassifier::ChildRole) {
      row_of[{child, Role::NonEvent}] = table.row_labels.size();
      table.row_labels.emplace_back(to_string(child));
      continue;
    }
    for (Role head : kEventRoles) {
      row_of[{child, head}] = table.row_labels.size();
      table.row_labels.push_back(std::string(to_string(child)) + "->" +
                                 std::string(to_string(head)));
    }
  }
  table.cells.assign(table.row_labels.size(),
                     std::vector<std::int64_t>(table.bucket_count(), 0));

  for (const auto& g : graphs) {
    std::map<std::int64_t, const Anchor*> by_id;
    for (const auto& a : g.anchors) by_id.emplace(a.id, &a);
    for (const auto& a : g.anchors) {
      if (a.is_root() || !is_event(a.role)) continue;
      auto it = by_id.find(a.head);
      if (it == by_id.end() || !is_event(it->second->role)) continue;
      const std::int64_t dist = std::llabs(a.span.start - it->second->span.start);
      const auto upper = std::upper_bound(table.bucket_edges.begin(), table.bucket_edges.end(),
                                          dist);
      const auto bucket = static_cast<std::size_t>(upper - table.bucket_edges.begin()) - 1;
      const Role head = classify == DistanceClassifier::ChildRole ? Role::NonEvent
                                                                  : it->second->role;
      ++table.cells[row_of.at({a.role, head})][bucket];
    }
  }
  return table;
}

inline std::string distance_table_csv(const DistanceTable& t) {
  std::string out = "type";
  for (std::size_t b = 0; b < t.bucket_count(); ++b) out += "," + t.bucket_label(b);
  out += "\n";
  for (std::size_t r = 0; r < t.row_labels.size(); ++r) {
    out += t.row_labels[r];
    for (auto c : t.cells[r]) out += "," + std::to_string(c);
    out += "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Lexical role preference
//
//   x = (c_I - c_R) / total     Impulse-Resonance preference
//   y = (c_P - c_R) / total     Pause-Resonance preference

struct LexicalEntry {
  std::string word;
  std::int64_t impulse = 0;
  std::int64_t resonance = 0;
  std::int64_t pause = 0;
  std::int64_t total = 0;
  double x = 0.0;
  double y = 0.0;

  // Ties go to Resonance, then Impulse, then Pause.
  Role majority() const noexcept {
    if (resonance >= impulse && resonance >= pause) return Role::Resonance;
    if (impulse >= pause) return Role::Impulse;
    return Role::Pause;
  }
};

struct LexicalRoleStats {
  std::map<std::string, LexicalEntry> entries;  // keyed by lowercased word

  const LexicalEntry* find(std::string_view word) const {
    auto it = entries.find(lexical_key(word));
    return it == entries.end() ? nullptr : &it->second;
  }

  static std::string lexical_key(std::string_view word) {
    std::string k(word);
    for (char& c : k) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return k;
  }
};

inline void finalize_entry(LexicalEntry& e) {
  e.total = e.impulse + e.resonance + e.pause;
  const auto t = static_cast<double>(e.total);
  e.x = e.total > 0 ? static_cast<double>(e.impulse - e.resonance) / t : 0.0;
  e.y = e.total > 0 ? static_cast<double>(e.pause - e.resonance) / t : 0.0;
}

inline LexicalRoleStats lexical_role_space(const std::vector<NarrativeGraph>& graphs,
                                           std::int64_t min_freq = 1) {
  if (min_freq < 1) throw Error("min_freq must be >= 1");
  LexicalRoleStats stats;
  for (const auto& g : graphs) {
    for (const auto& a : g.anchors) {
      if (!is_event(a.role)) continue;
      auto& e = stats.entries[LexicalRoleStats::lexical_key(a.word)];
      if (e.word.empty()) e.word = LexicalRoleStats::lexical_key(a.word);
      if (a.role == Role::Impulse) ++e.impulse;
      if (a.role == Role::Resonance) ++e.resonance;
      if (a.role == Role::Pause) ++e.pause;
    }
  }
  for (auto it = stats.entries.begin(); it != stats.entries.end();) {
    finalize_entry(it->second);
    if (it->second.total < min_freq) {
      it = stats.entries.erase(it);
    } else {
      ++it;
    }
  }
  return stats;
}

inline constexpr std::string_view kLexiconCsvHeader = "word,impulse,resonance,pause,total,x,y";

inline std::string lexicon_csv(const LexicalRoleStats& stats) {
  std::string out = std::string(kLexiconCsvHeader) + "\n";
  for (const auto& [key, e] : stats.entries) {
    out += csv_escape(e.word) + "," + std::to_string(e.impulse) + "," +
           std::to_string(e.resonance) + "," + std::to_string(e.pause) + "," +
           std::to_string(e.total) + "," + format_fixed(e.x) + "," + format_fixed(e.y) + "\n";
  }
  return out;
}

// Reads the counts back from lexicon_csv output; coordinates are recomputed.
inline LexicalRoleStats parse_lexicon_csv(std::string_view text) {
  LexicalRoleStats stats;
  const auto lines = detail::split_lines(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const auto line = detail::trim(lines[n]);
    if (line.empty() || (n == 0 && line.starts_with("word,"))) continue;
    // The word may be quoted; counts are the last six fields.
    std::vector<std::string_view> fields;
    std::size_t end = line.size();
    for (int k = 0; k < 6; ++k) {
      const auto comma = line.rfind(',', end - 1);
      if (comma == std::string_view::npos || end == 0) {
        throw FormatError(FormatError::Kind::MalformedRow, n + 1, "lexicon row needs 7 fields");
      }
      fields.push_back(line.substr(comma + 1, end - comma - 1));
      end = comma;
    }
    std::string word(line.substr(0, end));
    if (word.size() >= 2 && word.front() == '"' && word.back() == '"') {
      std::string unq;
      for (std::size_t i = 1; i + 1 < word.size(); ++i) {
        if (word[i] == '"' && i + 2 < word.size() && word[i + 1] == '"') ++i;
        unq += word[i];
      }
      word = unq;
    }
    // fields are reversed: y, x, total, pause, resonance, impulse
    auto imp = detail::parse_int(fields[5]);
    auto res = detail::parse_int(fields[4]);
    auto pau = detail::parse_int(fields[3]);
    if (!imp || !res || !pau) {
      throw FormatError(FormatError::Kind::MalformedRow, n + 1, "non-integer lexicon counts");
    }
    LexicalEntry e;
    e.word = LexicalRoleStats::lexical_key(word);
    e.impulse = *imp;
    e.resonance = *res;
    e.pause = *pau;
    finalize_entry(e);
    stats.entries[e.word] = e;
  }
  return stats;
}

// ---------------------------------------------------------------------------
// Story shape

struct ShapeRecord {
  std::int64_t anchor_id = 0;
  std::string word;
  Role role = Role::Impulse;
  std::int64_t x = 0;
  double y = 0.0;
  int z = 0;
};

inline std::vector<ShapeRecord> story_shape_export(const NarrativeGraph& graph,
                                                   const DeltaConfig& cfg = DeltaConfig{}) {
  const auto points = vista_coordinates(graph, cfg);
  std::map<std::int64_t, const Anchor*> by_id;
  for (const auto& a : graph.anchors) by_id.emplace(a.id, &a);
  std::vector<ShapeRecord> out;
  out.reserve(points.size());
  for (const auto& p : points) {
    const Anchor& a = *by_id.at(p.anchor_id);
    out.push_back({a.id, a.word, a.role, p.x, p.y, p.z});
  }
  return out;
}

inline std::string story_shape_csv(const std::vector<ShapeRecord>& records) {
  std::string out = "anchor_id,word,role,x,y,z\n";
  for (const auto& r : records) {
    out += std::to_string(r.anchor_id) + "," + csv_escape(r.word) + "," +
           std::string(to_string(r.role)) + "," + std::to_string(r.x) + "," + format_fixed(r.y) +
           "," + std::to_string(r.z) + "\n";
  }
  return out;
}

}  // namespace vista
