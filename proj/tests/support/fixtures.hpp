#pragma once

// Shared fixtures and random graph generators for the test suites.

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <filesystem>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "vista/vista.hpp"

namespace vt {

inline std::string data_path(const std::string& rel) { return std::string(VISTA_TEST_DATA) + "/" + rel; }

inline std::string read_data(const std::string& rel) { return vista::read_file(data_path(rel)); }

inline vista::NarrativeGraph graph_from_rows(const vista::PredictionRows& rows, std::string text,
                                             std::string doc_id) {
  vista::NarrativeGraph g;
  g.doc_id = std::move(doc_id);
  g.text = std::move(text);
  for (const auto& r : rows) g.anchors.push_back({r.id, r.span, r.word, r.category, r.head});
  return g;
}

inline vista::PredictionRows rows_from_graph(const vista::NarrativeGraph& g) {
  vista::PredictionRows rows;
  for (const auto& a : g.anchors) {
    if (vista::is_event(a.role)) rows.push_back({a.id, a.role, a.span, a.word, a.head});
  }
  return rows;
}

// Demonstration document and its gold table, as embedded in both prompts.
inline vista::NarrativeGraph oneshot_graph() {
  return graph_from_rows(vista::parse_prediction_table_strict(read_data("oneshot_output.txt")),
                         read_data("oneshot_text.txt"), "oneshot");
}

// Excerpted end-to-end outputs. The gold table carries offsets only, so the
// graph text is filler long enough to contain every span.
inline const std::vector<std::string>& excerpt_models() {
  static const std::vector<std::string> names = {"gpt5", "gpt5_thinking", "deepseek_v3_2",
                                                 "gemini_3_pro_thinking"};
  return names;
}

inline vista::NarrativeGraph excerpt_gold_graph() {
  const auto parsed = vista::parse_model_output_tolerant(read_data("excerpts/gold.tex"));
  return graph_from_rows(parsed.rows, std::string(6000, 'x'), "tom_jones_excerpt");
}

// ---------------------------------------------------------------------------
// Generators

using Rng = std::mt19937_64;

inline std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

inline vista::Role random_event_role(Rng& rng) {
  const auto r = uniform(rng, 0, 9);
  if (r < 3) return vista::Role::Impulse;
  if (r < 8) return vista::Role::Resonance;
  return vista::Role::Pause;
}

// Text of n anchor words ("w0", "w1", ...) separated by filler tokens; spans
// and words are filled in, roles and heads left to the caller.
inline vista::NarrativeGraph scaffold(Rng& rng, std::size_t n, const std::string& doc_id = "doc") {
  vista::NarrativeGraph g;
  g.doc_id = doc_id;
  static const char* kFiller[] = {"the", "a", "and", ",", "of", "then", "."};
  for (std::size_t i = 0; i < n; ++i) {
    const auto gap = uniform(rng, 0, 3);
    for (std::int64_t k = 0; k < gap; ++k) g.text += std::string(kFiller[uniform(rng, 0, 6)]) + " ";
    const std::string word = "w" + std::to_string(i);
    const auto start = static_cast<std::int64_t>(g.text.size());
    g.text += word + " ";
    g.anchors.push_back({static_cast<std::int64_t>(i), {start, start + static_cast<std::int64_t>(word.size())},
                         word, vista::Role::Resonance, vista::kRootHead});
  }
  g.text += "end .";
  return g;
}

inline bool allowed_head(vista::Role child, vista::Role head, bool relaxed) {
  using vista::Role;
  switch (child) {
    case Role::Impulse: return head == Role::Impulse;
    case Role::Resonance: return head == Role::Impulse || (relaxed && head == Role::Resonance);
    case Role::Pause:
      return head == Role::Impulse || head == Role::Resonance || (relaxed && head == Role::Pause);
    case Role::NonEvent: return false;
  }
  return false;
}

// Acyclic by construction: heads are drawn from anchors earlier in a random
// priority order, so they may sit before or after the child in the text.
inline vista::NarrativeGraph random_valid_graph(Rng& rng, std::size_t n, bool relaxed,
                                                double nonevent_p = 0.05,
                                                const std::string& doc_id = "doc") {
  auto g = scaffold(rng, n, doc_id);
  for (auto& a : g.anchors) a.role = coin(rng, nonevent_p) ? vista::Role::NonEvent : random_event_role(rng);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  for (std::size_t p = 0; p < n; ++p) {
    auto& a = g.anchors[order[p]];
    if (!vista::is_event(a.role) || coin(rng, 0.15)) continue;
    std::vector<std::size_t> options;
    for (std::size_t q = 0; q < p; ++q) {
      const auto& h = g.anchors[order[q]];
      if (vista::is_event(h.role) && allowed_head(a.role, h.role, relaxed)) options.push_back(order[q]);
    }
    if (!options.empty()) a.head = g.anchors[options[uniform(rng, 0, options.size() - 1)]].id;
  }
  return g;
}

// Graphs the inline format can express: Impulses chain to the previous
// Impulse; other anchors take an earlier Impulse or their recency head.
inline vista::NarrativeGraph random_inline_graph(Rng& rng, std::size_t n, bool relaxed) {
  using vista::Role;
  auto g = scaffold(rng, n);
  std::optional<std::size_t> last_i, last_ir, last_ev;
  std::vector<std::size_t> impulses;
  for (std::size_t k = 0; k < n; ++k) {
    auto& a = g.anchors[k];
    a.role = coin(rng, 0.05) ? Role::NonEvent : random_event_role(rng);
    a.head = vista::kRootHead;
    if (a.role == Role::Impulse) {
      if (last_i) a.head = g.anchors[*last_i].id;
    } else if (a.role != Role::NonEvent) {
      const auto implicit = a.role == Role::Resonance ? last_ir : last_ev;
      const bool implicit_ok =
          !implicit || allowed_head(a.role, g.anchors[*implicit].role, relaxed);
      if (!impulses.empty() && (coin(rng) || !implicit_ok)) {
        a.head = g.anchors[impulses[uniform(rng, 0, impulses.size() - 1)]].id;
      } else if (implicit_ok) {
        a.head = implicit ? g.anchors[*implicit].id : vista::kRootHead;
      } else {
        a.role = Role::Impulse;
        if (last_i) a.head = g.anchors[*last_i].id;
      }
    }
    if (a.role == Role::Impulse) {
      last_i = k;
      impulses.push_back(k);
    }
    if (a.role == Role::Impulse || a.role == Role::Resonance) last_ir = k;
    if (vista::is_event(a.role)) last_ev = k;
  }
  return g;
}

// Scratch directory removed on destruction.
struct TempDir {
  std::filesystem::path path;
  TempDir() {
    static std::atomic<int> n{0};
    path = std::filesystem::temp_directory_path() /
           ("vista_test_" + std::to_string(::getpid()) + "_" + std::to_string(n++));
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
};

}  // namespace vt
