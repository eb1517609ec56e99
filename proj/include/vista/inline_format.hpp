#pragma once

// Inline role-tagged text.
//
// Grammar (tags are ASCII, names case-insensitive):
//
//   tagged  := (plain | element)*
//   element := "<" ROLE ">" token index? "</" ROLE ">"
//            | "<span style=\"color:" COLOR "\">" token index? "</span>"
//   ROLE    := Impulse | Resonance | Pause | NonEvent
//   index   := "@" digits      (Impulse only: registers backbone index n)
//            | "#" digits      (Resonance/Pause: head is the latest Impulse @n)
//
// COLOR is mapped to a role through InlineTagMap (red/green/blue by default).
// Elements do not nest. Anything else, including a '<' that does not start a
// known tag, is plain text. Offsets are computed on the text with every tag
// and index marker removed.
//
// Dependents without an index attach by recency: a Resonance to the nearest
// preceding Impulse or Resonance, a Pause to the nearest preceding event
// anchor, an Impulse to the previous Impulse. Without such an anchor the
// head is -1.

#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "vista/error.hpp"
#include "vista/graph.hpp"
#include "vista/prediction_table.hpp"
#include "vista/utf8.hpp"
#include "vista/validate.hpp"

namespace vista {

struct InlineTagMap {
  std::map<std::string, Role> colors = {
      {"red", Role::Impulse}, {"green", Role::Resonance}, {"blue", Role::Pause}};
};

struct InlineDoc {
  std::string plain_text;
  NarrativeGraph graph;
};

enum class IndexPolicy { All, Minimal };

namespace detail {

struct TagMatch {
  enum class Type { Open, Close } type;
  std::optional<Role> role;  // open tags; close tags of role elements
  bool span_tag = false;
  std::size_t length = 0;    // bytes consumed
};

inline bool istarts_with(std::string_view s, std::string_view prefix) noexcept {
  return s.size() >= prefix.size() && iequals(s.substr(0, prefix.size()), prefix);
}

inline std::optional<Role> color_role(std::string_view style, const InlineTagMap& map) {
  std::string lower(style);
  for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  auto pos = lower.find("color");
  if (pos == std::string::npos) return std::nullopt;
  pos = lower.find(':', pos);
  if (pos == std::string::npos) return std::nullopt;
  std::size_t b = pos + 1;
  while (b < lower.size() && lower[b] == ' ') ++b;
  std::size_t e = b;
  while (e < lower.size() && lower[e] != ';' && lower[e] != '"' && lower[e] != '\'' &&
         lower[e] != ' ')
    ++e;
  auto it = map.colors.find(lower.substr(b, e - b));
  if (it == map.colors.end()) return std::nullopt;
  return it->second;
}

// Recognizes a known tag at the start of `s` (which begins with '<').
inline std::optional<TagMatch> match_tag(std::string_view s, const InlineTagMap& map) {
  if (s.empty() || s[0] != '<') return std::nullopt;
  for (Role r : {Role::Impulse, Role::Resonance, Role::Pause, Role::NonEvent}) {
    const std::string name(to_string(r));
    if (istarts_with(s, "<" + name + ">")) {
      return TagMatch{TagMatch::Type::Open, r, false, name.size() + 2};
    }
    if (istarts_with(s, "</" + name + ">")) {
      return TagMatch{TagMatch::Type::Close, r, false, name.size() + 3};
    }
  }
  if (istarts_with(s, "</span>")) return TagMatch{TagMatch::Type::Close, std::nullopt, true, 7};
  if (istarts_with(s, "<span ")) {
    const auto close = s.find('>');
    if (close == std::string_view::npos) return std::nullopt;
    auto role = color_role(s.substr(0, close), map);
    if (!role) return std::nullopt;
    return TagMatch{TagMatch::Type::Open, role, true, close + 1};
  }
  return std::nullopt;
}

struct IndexSuffix {
  std::string_view token;
  char marker = 0;  // '@', '#', or 0
  std::int64_t index = 0;
};

inline IndexSuffix split_index(std::string_view inner) {
  IndexSuffix out{inner, 0, 0};
  std::size_t i = inner.size();
  while (i > 0 && std::isdigit(static_cast<unsigned char>(inner[i - 1]))) --i;
  if (i == inner.size() || i < 2) return out;
  const char m = inner[i - 1];
  if (m != '@' && m != '#') return out;
  auto n = parse_int(inner.substr(i));
  if (!n) return out;
  out.token = inner.substr(0, i - 1);
  out.marker = m;
  out.index = *n;
  return out;
}

inline bool is_word_char(char32_t c) noexcept {
  if (c < 0x80) return std::isalnum(static_cast<int>(c)) || c == '_';
  return !(c >= 0x2000 && c <= 0x206F) && c != 0x00A0;  // skip general punctuation
}

inline bool is_space_char(char32_t c) noexcept {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == 0x00A0;
}

}  // namespace detail

inline InlineDoc parse_inline(std::string_view tagged, const std::string& doc_id = "",
                              const InlineTagMap& map = InlineTagMap{}) {
  using Kind = FormatError::Kind;
  InlineDoc doc;
  doc.graph.doc_id = doc_id;
  std::string& plain = doc.plain_text;
  std::int64_t plain_len = 0;  // scalar count of `plain`
  std::size_t line = 1;

  std::unordered_map<std::int64_t, std::int64_t> backbone_index;  // @n -> anchor id
  std::optional<std::int64_t> last_impulse, last_imp_or_res, last_event;

  std::size_t i = 0;
  while (i < tagged.size()) {
    const char c = tagged[i];
    if (c == '<') {
      if (auto tag = detail::match_tag(tagged.substr(i), map)) {
        if (tag->type == detail::TagMatch::Type::Close) {
          throw FormatError(Kind::MalformedTag, line, "closing tag without an open element");
        }
        const std::size_t inner_begin = i + tag->length;
        const std::size_t close_at = tagged.find("</", inner_begin);
        const std::size_t next_open = tagged.find('<', inner_begin);
        if (close_at == std::string_view::npos) {
          throw FormatError(Kind::MalformedTag, line, "unterminated element");
        }
        if (next_open < close_at) {
          throw FormatError(Kind::MalformedTag, line, "nested or stray '<' inside element");
        }
        auto close = detail::match_tag(tagged.substr(close_at), map);
        if (!close || close->type != detail::TagMatch::Type::Close ||
            close->span_tag != tag->span_tag || (!tag->span_tag && close->role != tag->role)) {
          throw FormatError(Kind::MalformedTag, line, "mismatched closing tag");
        }
        const std::string_view inner = tagged.substr(inner_begin, close_at - inner_begin);
        if (inner.find('\n') != std::string_view::npos) {
          throw FormatError(Kind::MalformedTag, line, "element spans a line break");
        }
        const auto parts = detail::split_index(inner);
        if (parts.token.empty()) throw FormatError(Kind::MalformedTag, line, "empty element");
        const Role role = *tag->role;
        if (parts.marker == '@' && role != Role::Impulse) {
          throw FormatError(Kind::MalformedTag, line, "'@n' is only valid on Impulse anchors");
        }
        if (parts.marker == '#' && (role == Role::Impulse || role == Role::NonEvent)) {
          throw FormatError(Kind::MalformedTag, line,
                            "'#n' is only valid on Resonance or Pause anchors");
        }

        Anchor a;
        a.id = static_cast<std::int64_t>(doc.graph.anchors.size());
        a.role = role;
        a.word = std::string(parts.token);
        const auto token_len = static_cast<std::int64_t>(utf8::length(parts.token));
        a.span = {plain_len, plain_len + token_len};
        switch (role) {
          case Role::Impulse:
            a.head = last_impulse.value_or(kRootHead);
            if (parts.marker == '@') backbone_index[parts.index] = a.id;
            break;
          case Role::Resonance:
          case Role::Pause:
            if (parts.marker == '#') {
              auto it = backbone_index.find(parts.index);
              if (it == backbone_index.end()) {
                throw FormatError(Kind::UnknownIndex, line,
                                  "#" + std::to_string(parts.index) + " has no earlier @" +
                                      std::to_string(parts.index));
              }
              a.head = it->second;
            } else if (role == Role::Resonance) {
              a.head = last_imp_or_res.value_or(kRootHead);
            } else {
              a.head = last_event.value_or(kRootHead);
            }
            break;
          case Role::NonEvent:
            a.head = kRootHead;
            break;
        }
        if (role == Role::Impulse) last_impulse = a.id;
        if (role == Role::Impulse || role == Role::Resonance) last_imp_or_res = a.id;
        if (is_event(role)) last_event = a.id;

        plain.append(parts.token);
        plain_len += token_len;
        doc.graph.anchors.push_back(std::move(a));
        i = close_at + close->length;
        continue;
      }
    }
    const std::size_t len = utf8::sequence_length(tagged, i);
    if (c == '\n') ++line;
    plain.append(tagged.substr(i, len));
    ++plain_len;
    i += len;
  }
  doc.graph.text = plain;
  return doc;
}

inline std::string serialize_inline(const NarrativeGraph& graph,
                                    IndexPolicy policy = IndexPolicy::All,
                                    const InlineTagMap& map = InlineTagMap{}) {
  using Kind = FormatError::Kind;
  {
    auto report = validate(graph, ValidationMode::Relaxed);
    if (!report.valid()) {
      throw InvalidGraph("cannot serialize invalid graph '" + graph.doc_id + "'");
    }
  }
  const utf8::IndexedText text(graph.text);
  const auto& anchors = graph.anchors;
  const std::size_t n = anchors.size();

  // Any literal tag in the plain text would be re-read as markup.
  for (std::size_t i = 0; i < graph.text.size(); ++i) {
    if (graph.text[i] == '<' && detail::match_tag(std::string_view(graph.text).substr(i), map)) {
      throw FormatError(Kind::Unrepresentable, 0, "text contains a literal role tag");
    }
  }

  for (std::size_t k = 0; k < n; ++k) {
    const Span s = anchors[k].span;
    const auto id = std::to_string(anchors[k].id);
    if (k > 0 && s.start < anchors[k - 1].span.end) {
      throw FormatError(Kind::SpanNotOnToken, 0, "anchor " + id + " overlaps its predecessor");
    }
    const auto b = static_cast<std::size_t>(s.start), e = static_cast<std::size_t>(s.end);
    const char32_t first = text.at(b), last = text.at(e - 1);
    if (detail::is_space_char(first) || detail::is_space_char(last) ||
        (b > 0 && detail::is_word_char(first) && detail::is_word_char(text.at(b - 1))) ||
        (e < text.size() && detail::is_word_char(last) && detail::is_word_char(text.at(e)))) {
      throw FormatError(Kind::SpanNotOnToken, 0, "anchor " + id + " does not cover a whole token");
    }
    const auto slice = text.slice(b, e);
    if (slice.find('<') != std::string_view::npos || slice.find('\n') != std::string_view::npos ||
        detail::split_index(slice).marker != 0) {
      throw FormatError(Kind::Unrepresentable, 0, "anchor " + id + " text clashes with markup");
    }
  }

  std::unordered_map<std::int64_t, std::size_t> pos;
  for (std::size_t k = 0; k < n; ++k) pos.emplace(anchors[k].id, k);
  std::vector<std::int64_t> tau(n, 0);
  {
    std::int64_t t = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if (anchors[k].role == Role::Impulse) tau[k] = ++t;
    }
  }

  std::vector<std::string> suffix(n);
  std::vector<bool> referenced(n, false);
  std::optional<std::size_t> last_impulse, last_imp_or_res, last_event;
  auto id_or_root = [&](std::optional<std::size_t> k) {
    return k ? anchors[*k].id : kRootHead;
  };
  for (std::size_t k = 0; k < n; ++k) {
    const Anchor& a = anchors[k];
    const auto unrepresentable = [&](const std::string& why) {
      return FormatError(Kind::Unrepresentable, 0, "anchor " + std::to_string(a.id) + ": " + why);
    };
    switch (a.role) {
      case Role::Impulse:
        if (a.head != id_or_root(last_impulse)) {
          throw unrepresentable("Impulse head is not the previous Impulse");
        }
        break;
      case Role::Resonance:
      case Role::Pause: {
        const auto implicit =
            id_or_root(a.role == Role::Resonance ? last_imp_or_res : last_event);
        const bool head_is_impulse =
            !a.is_root() && anchors[pos.at(a.head)].role == Role::Impulse;
        if (head_is_impulse) {
          const std::size_t h = pos.at(a.head);
          const bool needs_index = policy == IndexPolicy::All || implicit != a.head;
          if (needs_index) {
            if (h > k) throw unrepresentable("indexed head must precede its dependent");
            suffix[k] = "#" + std::to_string(tau[h]);
            referenced[h] = true;
          }
        } else if (a.head != implicit) {
          throw unrepresentable("chain head differs from the recency attachment");
        }
        break;
      }
      case Role::NonEvent:
        break;
    }
    if (a.role == Role::Impulse) last_impulse = k;
    if (a.role == Role::Impulse || a.role == Role::Resonance) last_imp_or_res = k;
    if (is_event(a.role)) last_event = k;
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (anchors[k].role == Role::Impulse && (policy == IndexPolicy::All || referenced[k])) {
      suffix[k] = "@" + std::to_string(tau[k]);
    }
  }

  std::string out;
  out.reserve(graph.text.size() + n * 24);
  std::size_t cursor = 0;  // scalar index
  for (std::size_t k = 0; k < n; ++k) {
    const auto b = static_cast<std::size_t>(anchors[k].span.start);
    const auto e = static_cast<std::size_t>(anchors[k].span.end);
    out.append(text.slice(cursor, b));
    const std::string name(to_string(anchors[k].role));
    out += "<" + name + ">";
    out.append(text.slice(b, e));
    out += suffix[k];
    out += "</" + name + ">";
    cursor = e;
  }
  out.append(text.slice(cursor, text.size()));
  return out;
}

}  // namespace vista
