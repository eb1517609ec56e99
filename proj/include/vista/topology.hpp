#pragma once

// Backbone indexing, VISTA coordinates and crossing statistics.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <unordered_map>
#include <utility>
#include <vector>

#include "vista/graph.hpp"
#include "vista/validate.hpp"

namespace vista {

struct BackboneEntry {
  std::int64_t anchor_id;
  std::int64_t tau;
  friend bool operator==(const BackboneEntry&, const BackboneEntry&) = default;
};

struct VistaPoint {
  std::int64_t anchor_id;
  std::int64_t x;  // narrative progress index of the governing Impulse
  double y;        // N * delta
  int z;           // 1 for Pause, else 0
};

namespace detail {

inline void require_relaxed_valid(const NarrativeGraph& g) {
  auto report = validate(g, ValidationMode::Relaxed);
  if (!report.valid()) {
    const auto& v = report.violations.front();
    throw InvalidGraph("graph '" + g.doc_id + "' is invalid: anchor " +
                       std::to_string(v.anchor_id) + ": " + std::string(to_string(v.kind)) +
                       " (" + v.message + ")");
  }
}

inline std::unordered_map<std::int64_t, std::size_t> id_index(const NarrativeGraph& g) {
  std::unordered_map<std::int64_t, std::size_t> index;
  index.reserve(g.anchors.size());
  for (std::size_t i = 0; i < g.anchors.size(); ++i) index.emplace(g.anchors[i].id, i);
  return index;
}

// Head index per anchor, or npos for roots. Assumes a valid graph.
inline std::vector<std::size_t> head_indices(const NarrativeGraph& g) {
  auto index = id_index(g);
  std::vector<std::size_t> heads(g.anchors.size(), static_cast<std::size_t>(-1));
  for (std::size_t i = 0; i < g.anchors.size(); ++i) {
    if (!g.anchors[i].is_root()) heads[i] = index.at(g.anchors[i].head);
  }
  return heads;
}

inline constexpr std::size_t kNoHead = static_cast<std::size_t>(-1);

}  // namespace detail

// Impulse anchors in textual order with tau = 1..k.
inline std::vector<BackboneEntry> backbone(const NarrativeGraph& graph) {
  detail::require_relaxed_valid(graph);
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < graph.anchors.size(); ++i) {
    if (graph.anchors[i].role == Role::Impulse) order.push_back(i);
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return graph.anchors[a].span.start < graph.anchors[b].span.start;
  });
  std::vector<BackboneEntry> out;
  out.reserve(order.size());
  std::int64_t tau = 0;
  for (std::size_t i : order) out.push_back({graph.anchors[i].id, ++tau});
  return out;
}

// One point per event anchor, in textual order. Non-Impulse anchors inherit x
// from their nearest Impulse ancestor (0 when none). A Resonance sits at
// N * delta where N counts Pause anchors anywhere below it; a Pause takes the
// y of the Resonance it hangs from (through any Pause chain), else 0.
inline std::vector<VistaPoint> vista_coordinates(const NarrativeGraph& graph,
                                                 const DeltaConfig& cfg = DeltaConfig{}) {
  detail::require_relaxed_valid(graph);
  const auto& anchors = graph.anchors;
  const auto heads = detail::head_indices(graph);

  std::unordered_map<std::int64_t, std::int64_t> tau_of;
  for (const auto& e : backbone(graph)) tau_of.emplace(e.anchor_id, e.tau);

  std::vector<std::int64_t> x(anchors.size(), 0);
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    std::size_t cur = i;
    while (cur != detail::kNoHead && anchors[cur].role != Role::Impulse) cur = heads[cur];
    if (cur != detail::kNoHead) x[i] = tau_of.at(anchors[cur].id);
  }

  std::vector<std::int64_t> pauses_below(anchors.size(), 0);
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    if (anchors[i].role != Role::Pause) continue;
    for (std::size_t up = heads[i]; up != detail::kNoHead; up = heads[up]) {
      if (anchors[up].role == Role::Resonance) ++pauses_below[up];
    }
  }

  const double delta = cfg.value();
  std::vector<VistaPoint> points;
  points.reserve(anchors.size());
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    const Anchor& a = anchors[i];
    VistaPoint p{a.id, x[i], 0.0, 0};
    switch (a.role) {
      case Role::Impulse:
        break;
      case Role::Resonance:
        p.y = static_cast<double>(pauses_below[i]) * delta;
        break;
      case Role::Pause: {
        p.z = 1;
        std::size_t up = heads[i];
        while (up != detail::kNoHead && anchors[up].role == Role::Pause) up = heads[up];
        if (up != detail::kNoHead && anchors[up].role == Role::Resonance) {
          p.y = static_cast<double>(pauses_below[up]) * delta;
        }
        break;
      }
      case Role::NonEvent:
        continue;
    }
    points.push_back(p);
  }
  return points;
}

struct CrossDefinition {
  enum class Kind { Crossing, LongRange };
  Kind kind = Kind::Crossing;
  std::int64_t threshold = 0;

  static CrossDefinition crossing() { return {Kind::Crossing, 0}; }
  static CrossDefinition long_range(std::int64_t t) { return {Kind::LongRange, t}; }
};

namespace detail {

class Fenwick {
 public:
  explicit Fenwick(std::size_t n) : tree_(n + 1, 0) {}
  void add(std::size_t i) {
    for (++i; i < tree_.size(); i += i & (~i + 1)) ++tree_[i];
  }
  // Count of inserted positions in [0, i).
  std::int64_t prefix(std::size_t i) const {
    std::int64_t s = 0;
    for (; i > 0; i -= i & (~i + 1)) s += tree_[i];
    return s;
  }

 private:
  std::vector<std::int64_t> tree_;
};

// Number of interval pairs (a,b), (c,d) with a < c < b < d.
inline std::uint64_t count_proper_crossings(std::vector<std::pair<std::size_t, std::size_t>> iv,
                                            std::size_t positions) {
  std::sort(iv.begin(), iv.end());
  Fenwick open(positions);
  std::uint64_t total = 0;
  std::size_t i = 0;
  while (i < iv.size()) {
    std::size_t j = i;
    while (j < iv.size() && iv[j].first == iv[i].first) ++j;
    // Intervals already inserted all have a strictly smaller left end.
    for (std::size_t k = i; k < j; ++k) {
      const auto [c, d] = iv[k];
      total += static_cast<std::uint64_t>(open.prefix(d) - open.prefix(c + 1));
    }
    for (std::size_t k = i; k < j; ++k) open.add(iv[k].second);
    i = j;
  }
  return total;
}

}  // namespace detail

inline std::uint64_t cross_dependency_count(const NarrativeGraph& graph,
                                            CrossDefinition def = CrossDefinition::crossing()) {
  detail::require_relaxed_valid(graph);
  const auto& anchors = graph.anchors;
  const auto heads = detail::head_indices(graph);
  if (def.kind == CrossDefinition::Kind::LongRange) {
    std::uint64_t n = 0;
    for (std::size_t i = 0; i < anchors.size(); ++i) {
      if (heads[i] == detail::kNoHead) continue;
      if (std::llabs(anchors[i].span.start - anchors[heads[i]].span.start) > def.threshold) ++n;
    }
    return n;
  }
  // Anchors are in textual order, so vector positions are linear positions.
  std::vector<std::pair<std::size_t, std::size_t>> intervals;
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    if (heads[i] == detail::kNoHead) continue;
    intervals.emplace_back(std::min(i, heads[i]), std::max(i, heads[i]));
  }
  return detail::count_proper_crossings(std::move(intervals), anchors.size());
}

}  // namespace vista
