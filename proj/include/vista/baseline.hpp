#pragma once

// Deterministic no-network baseline. Roles come from a lexicon's majority role
// (Resonance for unseen words); Impulses chain to the previous Impulse and
// every other anchor attaches to the most recent Impulse.

#include <optional>
#include <string_view>

#include "vista/analysis.hpp"
#include "vista/candidates.hpp"
#include "vista/prediction_table.hpp"

namespace vista {

inline PredictionRows heuristic_baseline(std::string_view /*doc_text*/,
                                         const std::optional<CandidateList>& candidates,
                                         const LexicalRoleStats* lexicon = nullptr) {
  PredictionRows rows;
  if (!candidates) return rows;
  std::int64_t last_impulse = kRootHead;
  for (const auto& c : candidates->entries) {
    Role role = Role::Resonance;
    if (lexicon) {
      if (const auto* e = lexicon->find(c.word)) role = e->majority();
    }
    rows.push_back({c.id, role, c.span, c.word, last_impulse});
    if (role == Role::Impulse) last_impulse = c.id;
  }
  return rows;
}

}  // namespace vista
