#pragma once

// Three-column candidate anchor lists ("ID Offsets Word") used by the oracle
// setting, where gold spans are given and roles and heads are withheld.

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "vista/error.hpp"
#include "vista/graph.hpp"
#include "vista/prediction_table.hpp"

namespace vista {

struct Candidate {
  std::int64_t id = 0;
  Span span;
  std::string word;
  friend bool operator==(const Candidate&, const Candidate&) = default;
};

struct CandidateList {
  std::vector<Candidate> entries;

  bool empty() const noexcept { return entries.empty(); }
  std::size_t size() const noexcept { return entries.size(); }
  friend bool operator==(const CandidateList&, const CandidateList&) = default;
};

inline CandidateList parse_candidate_list(std::string_view text) {
  CandidateList list;
  std::unordered_set<std::int64_t> ids;
  bool seen_data = false;
  const auto lines = detail::split_lines(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const std::size_t line_no = n + 1;
    const auto toks = detail::split_ws(lines[n]);
    if (toks.empty()) continue;
    if (!seen_data && toks.size() == 3 && detail::iequals(toks[0], "ID") &&
        detail::iequals(toks[1], "Offsets")) {
      seen_data = true;
      continue;
    }
    seen_data = true;
    if (toks.size() != 3) {
      throw FormatError(FormatError::Kind::MalformedRow, line_no,
                        "expected 3 columns, found " + std::to_string(toks.size()));
    }
    auto id = detail::parse_int(toks[0]);
    auto span = detail::parse_offsets(toks[1]);
    if (!id || !span) {
      throw FormatError(FormatError::Kind::MalformedRow, line_no,
                        "bad id or offsets in '" + std::string(lines[n]) + "'");
    }
    if (!ids.insert(*id).second) {
      throw FormatError(FormatError::Kind::DuplicateId, line_no,
                        "candidate id " + std::to_string(*id) + " repeats");
    }
    if (!list.entries.empty() && span->start < list.entries.back().span.start) {
      throw FormatError(FormatError::Kind::UnorderedEntries, line_no,
                        "candidate spans must be non-decreasing by start");
    }
    list.entries.push_back({*id, *span, std::string(toks[2])});
  }
  return list;
}

// One "ID    start,end    word" line per candidate, no header.
inline std::string serialize_candidate_list(const CandidateList& list) {
  std::string out;
  for (const auto& c : list.entries) {
    out += std::to_string(c.id) + "    " + std::to_string(c.span.start) + "," +
           std::to_string(c.span.end) + "    " + c.word + "\n";
  }
  return out;
}

// Oracle candidates from gold: event anchors only, roles and heads dropped.
inline CandidateList candidates_from_graph(const NarrativeGraph& g) {
  CandidateList list;
  for (const Anchor& a : g.anchors) {
    if (is_event(a.role)) list.entries.push_back({a.id, a.span, a.word});
  }
  return list;
}

}  // namespace vista
