#pragma once

// The five-column prediction template
//
//   ID   Category   Offsets   Word   Head
//   0    Impulse    64,69     tired  -1
//
// in a strict form (for files this toolkit writes) and a tolerant form for
// raw model output, which may wrap the table in prose, code fences, markdown
// pipes or LaTeX tabular syntax.

#include <charconv>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "vista/error.hpp"
#include "vista/graph.hpp"

namespace vista {

struct PredictionRow {
  std::int64_t id = 0;
  Role category = Role::Resonance;
  Span span;
  std::string word;
  std::int64_t head = kRootHead;
  friend bool operator==(const PredictionRow&, const PredictionRow&) = default;
};

using PredictionRows = std::vector<PredictionRow>;

namespace detail {

inline bool is_space(char c) noexcept {
  return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f';
}

inline std::string_view trim(std::string_view s) noexcept {
  while (!s.empty() && (is_space(s.front()) || s.front() == '\n')) s.remove_prefix(1);
  while (!s.empty() && (is_space(s.back()) || s.back() == '\n')) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    pos = nl + 1;
  }
  if (!lines.empty() && lines.back().empty() && !text.empty() && text.back() == '\n') {
    lines.pop_back();
  }
  return lines;
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && is_space(s[i])) ++i;
    std::size_t j = i;
    while (j < s.size() && !is_space(s[j])) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::optional<std::int64_t> parse_int(std::string_view s) noexcept {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  std::int64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

inline std::optional<Span> parse_offsets(std::string_view s) noexcept {
  const auto comma = s.find(',');
  if (comma == std::string_view::npos) return std::nullopt;
  auto a = parse_int(trim(s.substr(0, comma)));
  auto b = parse_int(trim(s.substr(comma + 1)));
  if (!a || !b) return std::nullopt;
  return Span{*a, *b};
}

inline bool is_header(const std::vector<std::string_view>& toks) {
  return toks.size() >= 2 && iequals(toks[0], "ID") && iequals(toks[1], "Category");
}

}  // namespace detail

// Whitespace-separated five-column rows; an optional "ID Category ..." header
// is skipped. Throws FormatError(MalformedRow) on any other deviation.
inline PredictionRows parse_prediction_table_strict(std::string_view text) {
  using detail::parse_int;
  PredictionRows rows;
  bool seen_data = false;
  const auto lines = detail::split_lines(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const std::size_t line_no = n + 1;
    const auto toks = detail::split_ws(lines[n]);
    if (toks.empty()) continue;
    if (!seen_data && detail::is_header(toks)) {
      seen_data = true;
      continue;
    }
    seen_data = true;
    auto bad = [&](const std::string& why) {
      return FormatError(FormatError::Kind::MalformedRow, line_no, why);
    };
    if (toks.size() != 5) {
      throw bad("expected 5 columns, found " + std::to_string(toks.size()));
    }
    PredictionRow row;
    auto id = parse_int(toks[0]);
    if (!id) throw bad("non-integer id '" + std::string(toks[0]) + "'");
    auto role = parse_role(toks[1]);
    if (!role || !is_event(*role)) throw bad("unknown category '" + std::string(toks[1]) + "'");
    auto span = detail::parse_offsets(toks[2]);
    if (!span) throw bad("unparseable offsets '" + std::string(toks[2]) + "'");
    auto head = parse_int(toks[4]);
    if (!head) throw bad("non-integer head '" + std::string(toks[4]) + "'");
    row.id = *id;
    row.category = *role;
    row.span = *span;
    row.word = std::string(toks[3]);
    row.head = *head;
    rows.push_back(std::move(row));
  }
  return rows;
}

inline std::string serialize_prediction_table(const PredictionRows& rows) {
  std::string out = "ID\tCategory\tOffsets\tWord\tHead\n";
  for (const auto& r : rows) {
    out += std::to_string(r.id);
    out += '\t';
    out += to_string(r.category);
    out += '\t';
    out += std::to_string(r.span.start) + "," + std::to_string(r.span.end);
    out += '\t';
    out += r.word;
    out += '\t';
    out += std::to_string(r.head);
    out += '\n';
  }
  return out;
}

struct SkippedLine {
  std::size_t line = 0;
  std::string reason;
  std::string text;
};

struct ParseDiagnostics {
  static constexpr std::size_t kMaxSamples = 8;

  std::size_t skipped_lines = 0;
  std::size_t header_lines = 0;
  std::vector<SkippedLine> skipped_samples;
  std::size_t repaired_rows = 0;
  std::map<std::string, std::size_t> repair_kinds;
  std::size_t ellipsis_rows = 0;
  // Indices (into the returned rows) whose span is negative or reversed. Such
  // rows stay in the output and count as predictions, but can never match.
  std::vector<std::size_t> invalid_span_rows;
  bool fatal = false;
};

struct TolerantParse {
  PredictionRows rows;
  ParseDiagnostics diagnostics;
};

namespace detail {

inline bool has_ellipsis(std::string_view s) noexcept {
  return s.find("\xE2\x8B\xAF") != std::string_view::npos ||  // U+22EF
         s.find("\xE2\x80\xA6") != std::string_view::npos ||  // U+2026
         s.find("cdots") != std::string_view::npos || s.find("ldots") != std::string_view::npos ||
         s.find("...") != std::string_view::npos;
}

inline bool is_rule_line(std::string_view s) noexcept {
  bool any = false;
  for (char c : s) {
    if (c == '-' || c == ':' || c == '=') {
      any = true;
    } else if (c != '|' && c != '+' && !is_space(c)) {
      return false;
    }
  }
  return any;
}

inline std::string_view strip_chars(std::string_view s, std::string_view chars) noexcept {
  while (!s.empty() && chars.find(s.front()) != std::string_view::npos) s.remove_prefix(1);
  while (!s.empty() && chars.find(s.back()) != std::string_view::npos) s.remove_suffix(1);
  return s;
}

// Attempts to read one table row; records repairs into `repairs`.
inline std::optional<PredictionRow> read_tolerant_row(std::string_view line,
                                                      std::vector<std::string>& repairs,
                                                      bool& unknown_category) {
  std::string norm(line);
  {
    auto t = trim(norm);
    if (t.size() >= 2 && t.substr(t.size() - 2) == "\\\\") {
      norm = std::string(t.substr(0, t.size() - 2));
      repairs.emplace_back("latex_row_end");
    }
  }
  bool pipes = false, amps = false;
  for (char& c : norm) {
    if (c == '|') {
      c = ' ';
      pipes = true;
    } else if (c == '&') {
      c = ' ';
      amps = true;
    }
  }
  if (pipes) repairs.emplace_back("pipe_separators");
  if (amps) repairs.emplace_back("latex_separators");

  auto toks = split_ws(norm);
  if (!toks.empty() && (toks.front() == "-" || toks.front() == "*" || toks.front() == "+")) {
    toks.erase(toks.begin());
    repairs.emplace_back("bullet");
  }
  if (toks.size() < 5) return std::nullopt;

  PredictionRow row;
  std::string_view id_tok = toks[0];
  if (!id_tok.empty() && (id_tok.back() == '.' || id_tok.back() == ':' || id_tok.back() == ')')) {
    id_tok.remove_suffix(1);
    repairs.emplace_back("id_punctuation");
  }
  auto id = parse_int(id_tok);
  if (!id) return std::nullopt;
  row.id = *id;

  std::string_view cat = strip_chars(toks[1], "*_`\"'");
  if (cat.size() != toks[1].size()) repairs.emplace_back("category_markup");
  auto role = parse_role(cat);
  if (!role || !is_event(*role)) {
    unknown_category = parse_int(toks.back()).has_value();
    return std::nullopt;
  }
  if (cat != to_string(*role)) repairs.emplace_back("category_case");
  row.category = *role;

  // Offsets may be split across tokens ("64, 69" or "64 , 69").
  std::size_t k = 2;
  std::string offsets(toks[k++]);
  bool merged = false;
  auto complete = [&] {
    auto c = offsets.find(',');
    if (c == std::string::npos) return false;
    return strip_chars(std::string_view(offsets).substr(c + 1), ")]} ").size() > 0;
  };
  while (!complete() && k + 2 < toks.size()) {
    offsets += toks[k++];
    merged = true;
  }
  if (merged) repairs.emplace_back("offset_spacing");
  std::string_view off_view = strip_chars(offsets, "([{}])");
  if (off_view.size() != offsets.size()) repairs.emplace_back("offset_brackets");
  auto span = parse_offsets(off_view);
  if (!span) return std::nullopt;
  row.span = *span;

  if (toks.size() - k < 2) return std::nullopt;
  std::string_view head_tok = strip_chars(toks.back(), "*`");
  auto head = parse_int(head_tok);
  if (!head) {
    if (iequals(head_tok, "root") || iequals(head_tok, "none") || iequals(head_tok, "null")) {
      head = kRootHead;
      repairs.emplace_back("root_keyword");
    } else {
      return std::nullopt;
    }
  }
  row.head = *head;

  std::string word;
  for (std::size_t w = k; w + 1 < toks.size(); ++w) {
    if (!word.empty()) word += ' ';
    word += toks[w];
  }
  std::string_view wv = strip_chars(word, "\"`*");
  if (wv.size() != word.size()) repairs.emplace_back("word_quotes");
  if (wv.empty()) return std::nullopt;
  row.word = std::string(wv);
  return row;
}

}  // namespace detail

// Recovers prediction rows from arbitrary model text. Never throws on
// content; everything skipped or repaired is recorded in the diagnostics.
inline TolerantParse parse_model_output_tolerant(std::string_view raw) noexcept {
  TolerantParse result;
  auto& diag = result.diagnostics;
  try {
    const auto lines = detail::split_lines(raw);
    auto skip = [&](std::size_t line_no, std::string reason, std::string_view text) {
      ++diag.skipped_lines;
      if (diag.skipped_samples.size() < ParseDiagnostics::kMaxSamples) {
        diag.skipped_samples.push_back(
            {line_no, std::move(reason), std::string(text.substr(0, 160))});
      }
    };
    for (std::size_t n = 0; n < lines.size(); ++n) {
      const std::size_t line_no = n + 1;
      const std::string_view line = detail::trim(lines[n]);
      if (line.empty()) continue;
      if (line.starts_with("```") || line.starts_with("~~~")) {
        skip(line_no, "fence", line);
        continue;
      }
      if (detail::is_rule_line(line)) {
        skip(line_no, "table_rule", line);
        continue;
      }
      std::vector<std::string> repairs;
      bool unknown_category = false;
      auto row = detail::read_tolerant_row(line, repairs, unknown_category);
      if (row) {
        if (!repairs.empty()) {
          ++diag.repaired_rows;
          for (const auto& r : repairs) ++diag.repair_kinds[r];
        }
        if (!row->span.valid()) diag.invalid_span_rows.push_back(result.rows.size());
        result.rows.push_back(std::move(*row));
        continue;
      }
      if (detail::has_ellipsis(line)) {
        ++diag.ellipsis_rows;
        skip(line_no, "ellipsis", line);
        continue;
      }
      std::string cleaned(line);
      for (char& c : cleaned) {
        if (c == '|' || c == '&') c = ' ';
      }
      if (detail::is_header(detail::split_ws(cleaned))) {
        ++diag.header_lines;
        skip(line_no, "header", line);
      } else if (unknown_category) {
        skip(line_no, "unknown_category", line);
      } else {
        skip(line_no, "prose", line);
      }
    }
  } catch (...) {
    // Only allocation failure can reach here; report what was recovered.
  }
  diag.fatal = result.rows.empty();
  return result;
}

}  // namespace vista
