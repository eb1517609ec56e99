#pragma once

// Anchor and dependency precision/recall/F1 against gold graphs.
//
// Anchors match one-to-one on span (and role, by default). Dependencies are
// directed (child span -> head span) pairs, with head -1 scored as an edge
// to a virtual ROOT. Both use maximum bipartite matching, so duplicated or
// ambiguous predictions never earn more than one gold item each.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "vista/graph.hpp"
#include "vista/prediction_table.hpp"
#include "vista/verify_spans.hpp"

namespace vista {

struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;

  static Prf from_counts(std::int64_t tp, std::int64_t fp, std::int64_t fn) {
    Prf p;
    p.tp = tp;
    p.fp = fp;
    p.fn = fn;
    p.precision = tp + fp > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
    p.recall = tp + fn > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
    p.f1 = p.precision + p.recall > 0.0
               ? 2.0 * p.precision * p.recall / (p.precision + p.recall)
               : 0.0;
    return p;
  }
};

struct SpanMatch {
  enum class Kind { Exact, WordWindow };
  Kind kind = Kind::Exact;
  std::int64_t window = 0;

  static SpanMatch exact() { return {}; }
  static SpanMatch word_window(std::int64_t k) {
    if (k < 0) throw Error("word_window tolerance must be >= 0");
    return {Kind::WordWindow, k};
  }
};

enum class Aggregation { Micro, Macro };

struct MatchConfig {
  SpanMatch span_match;
  bool role_required_for_anchor = true;
  bool dep_labeled = false;
  bool include_root_edges = true;
  bool include_backbone_edges = true;  // Impulse -> Impulse links
  Aggregation aggregation = Aggregation::Micro;
};

// 2ad/(a+d); 0 when both are 0. Inputs must lie in [0, 1].
inline double harmonic_mean(double anchor_f1, double dep_f1) {
  if (!(anchor_f1 >= 0.0 && anchor_f1 <= 1.0) || !(dep_f1 >= 0.0 && dep_f1 <= 1.0)) {
    throw std::domain_error("harmonic_mean inputs must lie in [0, 1]");
  }
  const double s = anchor_f1 + dep_f1;
  return s > 0.0 ? 2.0 * anchor_f1 * dep_f1 / s : 0.0;
}

namespace detail {

// Kuhn's augmenting-path maximum matching. `edges[l]` lists the right-hand
// vertices compatible with left vertex l.
inline std::int64_t max_matching(const std::vector<std::vector<std::size_t>>& edges,
                                 std::size_t right_size) {
  std::vector<std::size_t> match_right(right_size, static_cast<std::size_t>(-1));
  std::vector<char> seen;
  std::int64_t size = 0;
  // Iterative DFS so adversarially long chains cannot exhaust the stack.
  for (std::size_t root = 0; root < edges.size(); ++root) {
    if (edges[root].empty()) continue;
    seen.assign(right_size, 0);
    struct Frame {
      std::size_t left;
      std::size_t next;
    };
    std::vector<Frame> stack{{root, 0}};
    std::vector<std::size_t> via;  // right vertex taken to reach each frame above the root
    bool found = false;
    while (!stack.empty() && !found) {
      Frame& f = stack.back();
      if (f.next == edges[f.left].size()) {
        stack.pop_back();
        if (!via.empty()) via.pop_back();
        continue;
      }
      const std::size_t r = edges[f.left][f.next++];
      if (seen[r]) continue;
      seen[r] = 1;
      if (match_right[r] == static_cast<std::size_t>(-1)) {
        // Flip the path: each frame's left takes the right vertex it tried.
        match_right[r] = f.left;
        for (std::size_t d = stack.size() - 1; d > 0; --d) {
          match_right[via[d - 1]] = stack[d - 1].left;
        }
        found = true;
      } else {
        via.push_back(r);
        stack.push_back({match_right[r], 0});
      }
    }
    if (found) ++size;
  }
  return size;
}

inline bool spans_match(const SpanMatch& m, Span pred, const std::string& pred_word, Span gold,
                        const std::string& gold_word) {
  if (!pred.valid()) return false;
  if (m.kind == SpanMatch::Kind::Exact) return pred == gold;
  return std::llabs(pred.start - gold.start) <= m.window && words_match(pred_word, gold_word);
}

struct EdgeEnd {
  Span span;
  std::string word;
  Role role = Role::NonEvent;
};

struct Edge {
  EdgeEnd child;
  std::optional<EdgeEnd> head;  // nullopt = ROOT
  bool dangling = false;
};

inline bool edges_match(const MatchConfig& cfg, const Edge& p, const Edge& g) {
  if (p.dangling || g.dangling) return false;
  if (!spans_match(cfg.span_match, p.child.span, p.child.word, g.child.span, g.child.word)) {
    return false;
  }
  if (p.head.has_value() != g.head.has_value()) return false;
  if (p.head && !spans_match(cfg.span_match, p.head->span, p.head->word, g.head->span,
                             g.head->word)) {
    return false;
  }
  if (cfg.dep_labeled) {
    if (p.child.role != g.child.role) return false;
    if (p.head && p.head->role != g.head->role) return false;
  }
  return true;
}

inline bool keep_edge(const MatchConfig& cfg, const Edge& e) {
  if (!e.head) return cfg.include_root_edges;
  if (!cfg.include_backbone_edges && e.child.role == Role::Impulse &&
      e.head->role == Role::Impulse) {
    return false;
  }
  return true;
}

inline std::vector<Edge> predicted_edges(const PredictionRows& rows, const MatchConfig& cfg,
                                         std::vector<std::string>* diagnostics) {
  std::unordered_map<std::int64_t, std::size_t> by_id;
  for (std::size_t i = 0; i < rows.size(); ++i) by_id.emplace(rows[i].id, i);
  std::vector<Edge> edges;
  for (const auto& r : rows) {
    Edge e;
    e.child = {r.span, r.word, r.category};
    if (r.head != kRootHead) {
      auto it = by_id.find(r.head);
      if (it == by_id.end()) {
        e.dangling = true;
        e.head = EdgeEnd{};
        if (diagnostics) {
          diagnostics->push_back("DanglingHead: row " + std::to_string(r.id) + " heads " +
                                 std::to_string(r.head) + ", absent from the table");
        }
        edges.push_back(std::move(e));
        continue;
      }
      const auto& h = rows[it->second];
      e.head = EdgeEnd{h.span, h.word, h.category};
    }
    if (keep_edge(cfg, e)) edges.push_back(std::move(e));
  }
  return edges;
}

inline std::vector<Edge> gold_edges(const NarrativeGraph& gold, const MatchConfig& cfg) {
  std::unordered_map<std::int64_t, std::size_t> by_id;
  for (std::size_t i = 0; i < gold.anchors.size(); ++i) by_id.emplace(gold.anchors[i].id, i);
  std::vector<Edge> edges;
  for (const auto& a : gold.anchors) {
    if (!is_event(a.role)) continue;
    Edge e;
    e.child = {a.span, a.word, a.role};
    if (!a.is_root()) {
      const auto& h = gold.anchors.at(by_id.at(a.head));
      e.head = EdgeEnd{h.span, h.word, h.role};
    }
    if (keep_edge(cfg, e)) edges.push_back(std::move(e));
  }
  return edges;
}

}  // namespace detail

inline Prf anchor_prf(const PredictionRows& pred, const NarrativeGraph& gold,
                      const MatchConfig& cfg = MatchConfig{}) {
  std::vector<const Anchor*> gold_anchors;
  for (const auto& a : gold.anchors) {
    if (is_event(a.role)) gold_anchors.push_back(&a);
  }
  // Duplicate (span, role) rows: first occurrence kept, the rest count as fp.
  std::vector<const PredictionRow*> unique;
  std::map<std::tuple<std::int64_t, std::int64_t, int>, bool> seen;
  for (const auto& r : pred) {
    auto key = std::make_tuple(r.span.start, r.span.end, static_cast<int>(r.category));
    if (seen.emplace(key, true).second) unique.push_back(&r);
  }
  std::vector<std::vector<std::size_t>> compatible(unique.size());
  for (std::size_t i = 0; i < unique.size(); ++i) {
    const auto& r = *unique[i];
    for (std::size_t j = 0; j < gold_anchors.size(); ++j) {
      const auto& g = *gold_anchors[j];
      if (cfg.role_required_for_anchor && r.category != g.role) continue;
      if (detail::spans_match(cfg.span_match, r.span, r.word, g.span, g.word)) {
        compatible[i].push_back(j);
      }
    }
  }
  const std::int64_t tp = detail::max_matching(compatible, gold_anchors.size());
  return Prf::from_counts(tp, static_cast<std::int64_t>(pred.size()) - tp,
                          static_cast<std::int64_t>(gold_anchors.size()) - tp);
}

inline Prf dependency_prf(const PredictionRows& pred, const NarrativeGraph& gold,
                          const MatchConfig& cfg = MatchConfig{},
                          std::vector<std::string>* diagnostics = nullptr) {
  const auto p = detail::predicted_edges(pred, cfg, diagnostics);
  const auto g = detail::gold_edges(gold, cfg);
  std::vector<std::vector<std::size_t>> compatible(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < g.size(); ++j) {
      if (detail::edges_match(cfg, p[i], g[j])) compatible[i].push_back(j);
    }
  }
  const std::int64_t tp = detail::max_matching(compatible, g.size());
  return Prf::from_counts(tp, static_cast<std::int64_t>(p.size()) - tp,
                          static_cast<std::int64_t>(g.size()) - tp);
}

struct DocScore {
  Prf anchor;
  Prf dependency;
};

struct EvalResult {
  Prf anchor;
  Prf dependency;
  double harmonic = 0.0;
  std::map<std::string, DocScore> per_doc;
  std::vector<std::string> warnings;
};

namespace detail {

inline Prf aggregate(const std::vector<Prf>& docs, Aggregation how) {
  std::int64_t tp = 0, fp = 0, fn = 0;
  for (const auto& d : docs) {
    tp += d.tp;
    fp += d.fp;
    fn += d.fn;
  }
  if (how == Aggregation::Micro || docs.empty()) return Prf::from_counts(tp, fp, fn);
  Prf out;
  out.tp = tp;
  out.fp = fp;
  out.fn = fn;
  for (const auto& d : docs) {
    out.precision += d.precision;
    out.recall += d.recall;
    out.f1 += d.f1;
  }
  const auto n = static_cast<double>(docs.size());
  out.precision /= n;
  out.recall /= n;
  out.f1 /= n;
  return out;
}

}  // namespace detail

inline EvalResult score_run(const std::map<std::string, PredictionRows>& predictions,
                            const std::vector<NarrativeGraph>& gold,
                            const MatchConfig& cfg = MatchConfig{}) {
  EvalResult result;
  std::vector<Prf> anchors, deps;
  const PredictionRows empty;
  std::vector<const NarrativeGraph*> order;
  for (const auto& g : gold) order.push_back(&g);
  std::stable_sort(order.begin(), order.end(),
                   [](const auto* a, const auto* b) { return a->doc_id < b->doc_id; });
  for (const auto* gp : order) {
    const NarrativeGraph& g = *gp;
    auto it = predictions.find(g.doc_id);
    if (it == predictions.end()) {
      result.warnings.push_back("no predictions for '" + g.doc_id + "'; scored as empty");
    }
    const PredictionRows& rows = it == predictions.end() ? empty : it->second;
    std::vector<std::string> diag;
    DocScore s{anchor_prf(rows, g, cfg), dependency_prf(rows, g, cfg, &diag)};
    for (auto& d : diag) result.warnings.push_back(g.doc_id + ": " + d);
    anchors.push_back(s.anchor);
    deps.push_back(s.dependency);
    result.per_doc[g.doc_id] = s;
  }
  for (const auto& [doc_id, rows] : predictions) {
    if (!result.per_doc.count(doc_id)) {
      result.warnings.push_back("predictions for unknown document '" + doc_id + "' ignored");
    }
  }
  result.anchor = detail::aggregate(anchors, cfg.aggregation);
  result.dependency = detail::aggregate(deps, cfg.aggregation);
  result.harmonic = harmonic_mean(result.anchor.f1, result.dependency.f1);
  return result;
}

inline std::string format_fixed(double v, int decimals = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

inline nlohmann::ordered_json to_json(const Prf& p) {
  return {{"precision", p.precision}, {"recall", p.recall}, {"f1", p.f1},
          {"tp", p.tp},               {"fp", p.fp},         {"fn", p.fn}};
}

inline nlohmann::ordered_json to_json(const EvalResult& r) {
  nlohmann::ordered_json per_doc = nlohmann::ordered_json::object();
  for (const auto& [id, s] : r.per_doc) {
    per_doc[id] = {{"anchor", to_json(s.anchor)}, {"dependency", to_json(s.dependency)}};
  }
  return {{"anchor", to_json(r.anchor)},
          {"dependency", to_json(r.dependency)},
          {"harmonic", r.harmonic},
          {"per_doc", std::move(per_doc)},
          {"warnings", r.warnings}};
}

inline constexpr std::string_view kScoreCsvHeader =
    "model,anchor_p,anchor_r,anchor_f1,dep_p,dep_r,dep_f1,harmonic";

inline std::string score_csv_row(const std::string& model, const EvalResult& r) {
  return model + "," + format_fixed(r.anchor.precision) + "," + format_fixed(r.anchor.recall) +
         "," + format_fixed(r.anchor.f1) + "," + format_fixed(r.dependency.precision) + "," +
         format_fixed(r.dependency.recall) + "," + format_fixed(r.dependency.f1) + "," +
         format_fixed(r.harmonic);
}

}  // namespace vista
