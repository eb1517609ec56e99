#pragma once

// Span/word alignment checks. Comparison ignores ASCII case and trims
// surrounding whitespace and punctuation on both sides.

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "vista/graph.hpp"
#include "vista/prediction_table.hpp"
#include "vista/utf8.hpp"

namespace vista {

struct SpanMismatch {
  std::int64_t anchor_id = 0;
  Span span;
  std::string word;        // as recorded on the anchor/row
  std::string text_slice;  // what the span covers ("" when out of range)
  bool out_of_range = false;
};

namespace detail {

inline std::string normalize_word(std::string_view s) {
  auto skip = [](unsigned char c) { return std::isspace(c) || std::ispunct(c); };
  while (!s.empty() && skip(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && skip(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

inline void check_span(const utf8::IndexedText& text, std::int64_t id, Span span,
                       const std::string& word, std::vector<SpanMismatch>& out) {
  if (!span.fits(text.size())) {
    out.push_back({id, span, word, "", true});
    return;
  }
  const auto slice = text.slice(static_cast<std::size_t>(span.start),
                                static_cast<std::size_t>(span.end));
  if (normalize_word(slice) != normalize_word(word)) {
    out.push_back({id, span, word, std::string(slice), false});
  }
}

}  // namespace detail

inline bool words_match(std::string_view a, std::string_view b) {
  return detail::normalize_word(a) == detail::normalize_word(b);
}

inline std::vector<SpanMismatch> verify_spans(const PredictionRows& rows, std::string_view text) {
  const utf8::IndexedText indexed(text);
  std::vector<SpanMismatch> out;
  for (const auto& r : rows) detail::check_span(indexed, r.id, r.span, r.word, out);
  return out;
}

inline std::vector<SpanMismatch> verify_spans(const NarrativeGraph& graph) {
  const utf8::IndexedText indexed(graph.text);
  std::vector<SpanMismatch> out;
  for (const auto& a : graph.anchors) detail::check_span(indexed, a.id, a.span, a.word, out);
  return out;
}

}  // namespace vista
