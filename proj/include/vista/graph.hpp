#pragma once

// Core data model: roles, spans, anchors and the narrative graph.

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vista/error.hpp"

namespace vista {

enum class Role { Impulse, Resonance, Pause, NonEvent };

inline constexpr std::array<Role, 3> kEventRoles = {Role::Impulse, Role::Resonance,
                                                    Role::Pause};

inline constexpr std::string_view to_string(Role r) noexcept {
  switch (r) {
    case Role::Impulse: return "Impulse";
    case Role::Resonance: return "Resonance";
    case Role::Pause: return "Pause";
    case Role::NonEvent: return "NonEvent";
  }
  return "NonEvent";
}

inline constexpr bool is_event(Role r) noexcept { return r != Role::NonEvent; }

namespace detail {
inline bool iequals(std::string_view a, std::string_view b) noexcept {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}
}  // namespace detail

// Case-insensitive role lookup. Canonical spelling on output is to_string().
inline std::optional<Role> parse_role(std::string_view s) noexcept {
  for (Role r : {Role::Impulse, Role::Resonance, Role::Pause, Role::NonEvent}) {
    if (detail::iequals(s, to_string(r))) return r;
  }
  return std::nullopt;
}

// How an anchor acts on the narrative state at progress index tau.
enum class TransitionKind {
  Advance,     // tau -> tau + 1
  MicroShift,  // tau -> tau + delta
  Freeze,      // tau -> tau
  None,        // non-events carry no transition
};

inline constexpr TransitionKind role_transition(Role r) noexcept {
  switch (r) {
    case Role::Impulse: return TransitionKind::Advance;
    case Role::Resonance: return TransitionKind::MicroShift;
    case Role::Pause: return TransitionKind::Freeze;
    case Role::NonEvent: return TransitionKind::None;
  }
  return TransitionKind::None;
}

inline constexpr std::string_view to_string(TransitionKind k) noexcept {
  switch (k) {
    case TransitionKind::Advance: return "Advance";
    case TransitionKind::MicroShift: return "MicroShift";
    case TransitionKind::Freeze: return "Freeze";
    case TransitionKind::None: return "None";
  }
  return "None";
}

// Character span in Unicode scalar values, end-exclusive. Spans read from
// model output may be reversed or negative; valid() tells them apart.
struct Span {
  std::int64_t start = 0;
  std::int64_t end = 0;

  constexpr bool valid() const noexcept { return start >= 0 && start < end; }
  constexpr bool fits(std::size_t text_length) const noexcept {
    return valid() && static_cast<std::uint64_t>(end) <= text_length;
  }
  friend constexpr bool operator==(const Span&, const Span&) = default;
  friend constexpr auto operator<=>(const Span&, const Span&) = default;
};

inline constexpr std::int64_t kRootHead = -1;

struct Anchor {
  std::int64_t id = 0;
  Span span;
  std::string word;
  Role role = Role::NonEvent;
  std::int64_t head = kRootHead;

  bool is_root() const noexcept { return head == kRootHead; }
  friend bool operator==(const Anchor&, const Anchor&) = default;
};

struct NarrativeGraph {
  std::string doc_id;
  std::string text;
  std::vector<Anchor> anchors;  // ascending span.start

  // Index into `anchors` of the anchor with the given id.
  std::optional<std::size_t> index_of(std::int64_t id) const noexcept {
    for (std::size_t i = 0; i < anchors.size(); ++i) {
      if (anchors[i].id == id) return i;
    }
    return std::nullopt;
  }

  std::size_t count(Role r) const noexcept {
    return static_cast<std::size_t>(std::count_if(
        anchors.begin(), anchors.end(), [r](const Anchor& a) { return a.role == r; }));
  }

  friend bool operator==(const NarrativeGraph&, const NarrativeGraph&) = default;
};

// Stable sort of anchors into textual order.
inline void sort_anchors(NarrativeGraph& g) {
  std::stable_sort(g.anchors.begin(), g.anchors.end(), [](const Anchor& a, const Anchor& b) {
    return a.span.start < b.span.start;
  });
}

// Marginal increment, restricted to the open interval (0, 1).
class DeltaConfig {
 public:
  static constexpr double kDefault = 0.5;

  DeltaConfig() = default;
  explicit DeltaConfig(double delta) : delta_(delta) {
    if (!(delta > 0.0 && delta < 1.0)) {
      throw Error("delta must lie in the open interval (0, 1), got " + std::to_string(delta));
    }
  }

  double value() const noexcept { return delta_; }

 private:
  double delta_ = kDefault;
};

}  // namespace vista
