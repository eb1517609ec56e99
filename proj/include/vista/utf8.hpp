#pragma once

// Offsets throughout the toolkit count Unicode scalar values. These helpers
// translate between scalar indices and byte positions of UTF-8 strings.
// Malformed bytes decode as one scalar each, so every byte string has a
// well-defined length.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace vista::utf8 {

// Length in bytes of the sequence starting at s[i] (1 for malformed input).
inline std::size_t sequence_length(std::string_view s, std::size_t i) noexcept {
  const auto lead = static_cast<unsigned char>(s[i]);
  std::size_t len = 1;
  if (lead >= 0xC2 && lead <= 0xDF) {
    len = 2;
  } else if (lead >= 0xE0 && lead <= 0xEF) {
    len = 3;
  } else if (lead >= 0xF0 && lead <= 0xF4) {
    len = 4;
  } else {
    return 1;
  }
  if (i + len > s.size()) return 1;
  for (std::size_t k = 1; k < len; ++k) {
    if ((static_cast<unsigned char>(s[i + k]) & 0xC0) != 0x80) return 1;
  }
  return len;
}

inline std::size_t length(std::string_view s) noexcept {
  std::size_t n = 0;
  for (std::size_t i = 0; i < s.size(); i += sequence_length(s, i)) ++n;
  return n;
}

// Scalar-indexed view over a UTF-8 string. Keeps a reference to the bytes.
class IndexedText {
 public:
  explicit IndexedText(std::string_view text) : text_(text) {
    starts_.reserve(text.size() + 1);
    for (std::size_t i = 0; i < text.size(); i += sequence_length(text, i)) {
      starts_.push_back(i);
    }
    starts_.push_back(text.size());
  }

  // Number of scalar values.
  std::size_t size() const noexcept { return starts_.size() - 1; }

  std::size_t byte_offset(std::size_t scalar_index) const noexcept {
    return scalar_index < starts_.size() ? starts_[scalar_index] : text_.size();
  }

  // Slice by scalar indices [begin, end); clamped to the text.
  std::string_view slice(std::size_t begin, std::size_t end) const noexcept {
    if (begin > size()) begin = size();
    if (end > size()) end = size();
    if (end < begin) end = begin;
    const std::size_t b = starts_[begin];
    return text_.substr(b, starts_[end] - b);
  }

  // Scalar value at index i, or U+FFFD for malformed bytes.
  char32_t at(std::size_t i) const noexcept {
    const std::size_t b = starts_[i];
    const std::size_t len = starts_[i + 1] - b;
    const auto c0 = static_cast<unsigned char>(text_[b]);
    if (len == 1) return c0 < 0x80 ? char32_t{c0} : char32_t{0xFFFD};
    char32_t cp = c0 & (0x7F >> len);
    for (std::size_t k = 1; k < len; ++k) {
      cp = (cp << 6) | (static_cast<unsigned char>(text_[b + k]) & 0x3F);
    }
    return cp;
  }

  std::string_view bytes() const noexcept { return text_; }

 private:
  std::string_view text_;
  std::vector<std::size_t> starts_;
};

}  // namespace vista::utf8
