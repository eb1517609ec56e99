#pragma once

#include <string>
#include <string_view>

#include "vista/candidates.hpp"
#include "vista/error.hpp"
#include "vista/prompt_templates.hpp"

namespace vista {

class PromptError : public Error {
 public:
  enum class Kind { EmptyCandidates, EmptyText };
  PromptError(Kind kind, const std::string& msg) : Error(msg), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

namespace detail {

// Replaces the last occurrence of `placeholder` in `tmpl`. Placeholders sit in
// the final task section, after the demonstration.
inline std::string substitute_last(std::string_view tmpl, std::string_view placeholder,
                                   std::string_view value) {
  const auto pos = tmpl.rfind(placeholder);
  std::string out;
  out.reserve(tmpl.size() + value.size());
  out.append(tmpl.substr(0, pos));
  out.append(value);
  out.append(tmpl.substr(pos + placeholder.size()));
  return out;
}

}  // namespace detail

inline std::string build_oracle_prompt(std::string_view doc_text, const CandidateList& candidates) {
  if (candidates.empty()) {
    throw PromptError(PromptError::Kind::EmptyCandidates, "oracle prompt needs candidates");
  }
  std::string anchors = serialize_candidate_list(candidates);
  if (!anchors.empty() && anchors.back() == '\n') anchors.pop_back();
  // Substitute the anchor block first: the document text may itself contain
  // placeholder-looking strings.
  const auto tmpl = prompt_templates::kOracle;
  const auto text_pos = tmpl.rfind(prompt_templates::kTextPlaceholder);
  const std::string head(tmpl.substr(0, text_pos));
  const std::string tail(tmpl.substr(text_pos + prompt_templates::kTextPlaceholder.size()));
  return head + std::string(doc_text) +
         detail::substitute_last(tail, prompt_templates::kAnchorPlaceholder, "\n" + anchors);
}

inline std::string build_e2e_prompt(std::string_view doc_text) {
  if (doc_text.empty()) throw PromptError(PromptError::Kind::EmptyText, "document text is empty");
  return detail::substitute_last(prompt_templates::kEndToEnd, prompt_templates::kTextPlaceholder,
                                 doc_text);
}

}  // namespace vista
