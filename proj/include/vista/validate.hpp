#pragma once

// Structural validation of narrative graphs.
//
// Strict mode admits exactly the two edge layers of the topology:
// Resonance -> Impulse, and Pause -> (Impulse | Resonance). Impulse -> Impulse
// backbone links are tolerated in both modes and are not part of that edge set.
// Relaxed mode additionally admits Resonance -> Resonance and Pause -> Pause
// chains, which annotated data uses in practice.

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "vista/graph.hpp"
#include "vista/utf8.hpp"

namespace vista {

enum class ValidationMode { Strict, Relaxed };

inline constexpr std::string_view to_string(ValidationMode m) noexcept {
  return m == ValidationMode::Strict ? "strict" : "relaxed";
}

enum class ViolationKind {
  DuplicateId,
  EmptyWord,
  InvalidSpan,
  SpanOutOfBounds,
  OutOfOrder,
  SelfLoop,
  DanglingHead,
  Cycle,
  NonEventHasHead,
  NonEventHasDependent,
  ImpulseHeadNotImpulse,
  ResonanceHeadResonance,
  ResonanceHeadPause,
  PauseHeadPause,
};

inline constexpr std::string_view to_string(ViolationKind k) noexcept {
  switch (k) {
    case ViolationKind::DuplicateId: return "DuplicateId";
    case ViolationKind::EmptyWord: return "EmptyWord";
    case ViolationKind::InvalidSpan: return "InvalidSpan";
    case ViolationKind::SpanOutOfBounds: return "SpanOutOfBounds";
    case ViolationKind::OutOfOrder: return "OutOfOrder";
    case ViolationKind::SelfLoop: return "SelfLoop";
    case ViolationKind::DanglingHead: return "DanglingHead";
    case ViolationKind::Cycle: return "Cycle";
    case ViolationKind::NonEventHasHead: return "NonEventHasHead";
    case ViolationKind::NonEventHasDependent: return "NonEventHasDependent";
    case ViolationKind::ImpulseHeadNotImpulse: return "ImpulseHeadNotImpulse";
    case ViolationKind::ResonanceHeadResonance: return "ResonanceHeadResonance";
    case ViolationKind::ResonanceHeadPause: return "ResonanceHeadPause";
    case ViolationKind::PauseHeadPause: return "PauseHeadPause";
  }
  return "Unknown";
}

struct Violation {
  std::int64_t anchor_id;
  ViolationKind kind;
  std::string message;
};

struct ValidationReport {
  ValidationMode mode = ValidationMode::Strict;
  std::vector<Violation> violations;
  std::vector<std::string> notes;  // informational, never affect validity

  bool valid() const noexcept { return violations.empty(); }

  bool has(ViolationKind k) const noexcept {
    for (const auto& v : violations) {
      if (v.kind == k) return true;
    }
    return false;
  }
};

inline ValidationReport validate(const NarrativeGraph& graph,
                                 ValidationMode mode = ValidationMode::Strict) {
  ValidationReport report;
  report.mode = mode;
  auto flag = [&](std::int64_t id, ViolationKind kind, std::string msg) {
    report.violations.push_back({id, kind, std::move(msg)});
  };
  const auto& anchors = graph.anchors;
  const std::size_t text_len = utf8::length(graph.text);

  std::unordered_map<std::int64_t, std::size_t> index;
  index.reserve(anchors.size());
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    const Anchor& a = anchors[i];
    if (!index.emplace(a.id, i).second) {
      flag(a.id, ViolationKind::DuplicateId, "anchor id appears more than once");
    }
    if (a.word.empty()) flag(a.id, ViolationKind::EmptyWord, "anchor word is empty");
    if (!a.span.valid()) {
      flag(a.id, ViolationKind::InvalidSpan,
           "span " + std::to_string(a.span.start) + "," + std::to_string(a.span.end) +
               " is empty or negative");
    } else if (!a.span.fits(text_len)) {
      flag(a.id, ViolationKind::SpanOutOfBounds,
           "span end " + std::to_string(a.span.end) + " exceeds text length " +
               std::to_string(text_len));
    }
    if (i > 0 && a.span.start < anchors[i - 1].span.start) {
      flag(a.id, ViolationKind::OutOfOrder, "anchors are not in ascending span order");
    }
  }

  std::size_t roots = 0;
  for (const Anchor& a : anchors) {
    if (a.is_root()) {
      if (is_event(a.role)) ++roots;
      continue;
    }
    if (a.head == a.id) {
      flag(a.id, ViolationKind::SelfLoop, "anchor is its own head");
      continue;
    }
    auto it = index.find(a.head);
    if (it == index.end()) {
      flag(a.id, ViolationKind::DanglingHead,
           "head " + std::to_string(a.head) + " is not an anchor id");
      continue;
    }
    if (a.role == Role::NonEvent) {
      flag(a.id, ViolationKind::NonEventHasHead, "non-event anchors take no head");
      continue;
    }
    const Role head_role = anchors[it->second].role;
    if (head_role == Role::NonEvent) {
      flag(a.head, ViolationKind::NonEventHasDependent,
           "non-event anchor is head of " + std::to_string(a.id));
      continue;
    }
    switch (a.role) {
      case Role::Impulse:
        if (head_role != Role::Impulse) {
          flag(a.id, ViolationKind::ImpulseHeadNotImpulse,
               "Impulse heads " + std::string(to_string(head_role)) + " " +
                   std::to_string(a.head));
        }
        break;
      case Role::Resonance:
        if (head_role == Role::Pause) {
          flag(a.id, ViolationKind::ResonanceHeadPause,
               "Resonance heads Pause " + std::to_string(a.head));
        } else if (head_role == Role::Resonance && mode == ValidationMode::Strict) {
          flag(a.id, ViolationKind::ResonanceHeadResonance,
               "Resonance heads Resonance " + std::to_string(a.head) +
                   " (chain edge, relaxed mode only)");
        }
        break;
      case Role::Pause:
        if (head_role == Role::Pause && mode == ValidationMode::Strict) {
          flag(a.id, ViolationKind::PauseHeadPause,
               "Pause heads Pause " + std::to_string(a.head) +
                   " (chain edge, relaxed mode only)");
        }
        break;
      case Role::NonEvent:
        break;
    }
  }

  // Cycle detection over the head function. 0 = unvisited, 1 = on the
  // current walk, 2 = done.
  std::vector<int> state(anchors.size(), 0);
  for (std::size_t start = 0; start < anchors.size(); ++start) {
    if (state[start] != 0) continue;
    std::vector<std::size_t> walk;
    std::size_t cur = start;
    while (true) {
      if (state[cur] == 2) break;
      if (state[cur] == 1) {
        // Everything on the walk from `cur` onwards lies on a cycle.
        bool on_cycle = false;
        for (std::size_t w : walk) {
          if (w == cur) on_cycle = true;
          if (on_cycle && anchors[w].head != anchors[w].id) {
            flag(anchors[w].id, ViolationKind::Cycle, "head chain forms a cycle");
          }
        }
        break;
      }
      state[cur] = 1;
      walk.push_back(cur);
      const Anchor& a = anchors[cur];
      if (a.is_root()) break;
      auto it = index.find(a.head);
      if (it == index.end()) break;
      cur = it->second;
    }
    for (std::size_t w : walk) state[w] = 2;
  }

  if (roots > 1) {
    report.notes.push_back(std::to_string(roots) +
                           " root anchors (head -1); each starts its own component");
  }
  return report;
}

}  // namespace vista
