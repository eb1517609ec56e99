#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <set>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace vista;
using namespace vt;


TEST(Harmonic, DefinitionAndEdgeCases) {
  EXPECT_DOUBLE_EQ(harmonic_mean(0.0, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(harmonic_mean(1.0, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(harmonic_mean(0.5, 0.25), 2 * 0.5 * 0.25 / 0.75);
  EXPECT_DOUBLE_EQ(harmonic_mean(0.0, 0.9), 0.0);
  EXPECT_THROW(harmonic_mean(1.1, 0.5), std::domain_error);
  EXPECT_THROW(harmonic_mean(0.5, -0.1), std::domain_error);
  EXPECT_THROW(harmonic_mean(std::nan(""), 0.5), std::domain_error);
}

TEST(Harmonic, SpotRowsOfTheLeaderboard) {
  EXPECT_NEAR(harmonic_mean(0.4914, 0.5624), 0.5245, 2e-3);
  EXPECT_NEAR(harmonic_mean(0.2519, 0.7333), 0.3750, 2e-3);
  EXPECT_NEAR(harmonic_mean(0.2669, 0.3365), 0.2977, 2e-3);
}

TEST(Prf, FromCounts) {
  const auto p = Prf::from_counts(3, 1, 2);
  EXPECT_DOUBLE_EQ(p.precision, 0.75);
  EXPECT_DOUBLE_EQ(p.recall, 0.6);
  EXPECT_DOUBLE_EQ(p.f1, 2 * 0.75 * 0.6 / 1.35);
  const auto z = Prf::from_counts(0, 0, 0);
  EXPECT_EQ(z.f1, 0.0);
}

TEST(Scoring, GoldAgainstItselfIsPerfect) {
  const auto g = vt::oneshot_graph();
  const auto rows = vt::rows_from_graph(g);
  EXPECT_DOUBLE_EQ(anchor_prf(rows, g).f1, 1.0);
  EXPECT_DOUBLE_EQ(dependency_prf(rows, g).f1, 1.0);
  const auto r = score_run({{g.doc_id, rows}}, {g});
  EXPECT_DOUBLE_EQ(r.harmonic, 1.0);
  EXPECT_TRUE(r.warnings.empty());
}

TEST(Scoring, DuplicatesCountAsFalsePositives) {
  const auto g = vt::oneshot_graph();
  auto rows = vt::rows_from_graph(g);
  rows.push_back(rows[0]);
  const auto p = anchor_prf(rows, g);
  EXPECT_EQ(p.tp, 18);
  EXPECT_EQ(p.fp, 1);
  EXPECT_EQ(p.fn, 0);
}

TEST(Scoring, RoleMismatchAndRoleAgnosticMode) {
  const auto g = vt::oneshot_graph();
  auto rows = vt::rows_from_graph(g);
  rows[1].category = Role::Pause;
  EXPECT_EQ(anchor_prf(rows, g).tp, 17);
  MatchConfig cfg;
  cfg.role_required_for_anchor = false;
  EXPECT_EQ(anchor_prf(rows, g, cfg).tp, 18);
  // Unlabeled dependencies ignore roles.
  EXPECT_EQ(dependency_prf(rows, g).tp, 18);
  cfg.dep_labeled = true;
  EXPECT_LT(dependency_prf(rows, g, cfg).tp, 18);
}

TEST(Scoring, WordWindowMatching) {
  const auto g = vt::oneshot_graph();
  auto rows = vt::rows_from_graph(g);
  for (auto& r : rows) r.span = {r.span.start + 2, r.span.end + 2};
  EXPECT_EQ(anchor_prf(rows, g).tp, 0);
  MatchConfig cfg;
  cfg.span_match = SpanMatch::word_window(2);
  EXPECT_EQ(anchor_prf(rows, g, cfg).tp, 18);
  cfg.span_match = SpanMatch::word_window(1);
  EXPECT_EQ(anchor_prf(rows, g, cfg).tp, 0);
  EXPECT_THROW(SpanMatch::word_window(-1), Error);
  rows[0].word = "TIRED";
  cfg.span_match = SpanMatch::word_window(2);
  EXPECT_EQ(anchor_prf(rows, g, cfg).tp, 18);
}

TEST(Scoring, RootAndBackboneSwitches) {
  const auto g = vt::oneshot_graph();
  const auto rows = vt::rows_from_graph(g);
  MatchConfig cfg;
  cfg.include_root_edges = false;
  EXPECT_EQ(dependency_prf(rows, g, cfg).tp, 17);
  cfg.include_backbone_edges = false;
  // 8 Impulse -> Impulse links in the demonstration.
  EXPECT_EQ(dependency_prf(rows, g, cfg).tp, 9);
}

TEST(Scoring, DanglingHeadIsFalsePositiveWithDiagnostic) {
  const auto g = vt::oneshot_graph();
  auto rows = vt::rows_from_graph(g);
  rows[5].head = 77;
  std::vector<std::string> diag;
  const auto p = dependency_prf(rows, g, MatchConfig{}, &diag);
  EXPECT_EQ(p.tp, 17);
  EXPECT_EQ(p.fp, 1);
  ASSERT_EQ(diag.size(), 1u);
  EXPECT_EQ(diag[0].rfind("DanglingHead", 0), 0u);
}

TEST(Scoring, MissingAndUnknownDocuments) {
  const auto g = vt::oneshot_graph();
  auto g2 = g;
  g2.doc_id = "other";
  const auto r = score_run({{"oneshot", vt::rows_from_graph(g)}, {"stray", {}}}, {g, g2});
  EXPECT_EQ(r.anchor.tp, 18);
  EXPECT_EQ(r.anchor.fn, 18);
  EXPECT_DOUBLE_EQ(r.anchor.recall, 0.5);
  EXPECT_EQ(r.warnings.size(), 2u);
}

TEST(Scoring, MacroAveragesPerDocument) {
  const auto g = vt::oneshot_graph();
  auto g2 = g;
  g2.doc_id = "other";
  MatchConfig cfg;
  cfg.aggregation = Aggregation::Macro;
  auto half = vt::rows_from_graph(g);
  half.resize(9);
  const auto r = score_run({{"oneshot", vt::rows_from_graph(g)}, {"other", half}}, {g, g2}, cfg);
  EXPECT_DOUBLE_EQ(r.anchor.precision, 1.0);
  EXPECT_DOUBLE_EQ(r.anchor.recall, 0.75);
  EXPECT_DOUBLE_EQ(r.anchor.f1, (1.0 + 2.0 / 3.0) / 2.0);
}

TEST(Scoring, ExcerptOutputsHaveNoExactSpanMatches) {
  const auto gold = vt::excerpt_gold_graph();
  ASSERT_EQ(gold.anchors.size(), 15u);
  for (const auto& m : vt::excerpt_models()) {
    const auto rows = parse_model_output_tolerant(vt::read_data("excerpts/" + m + ".tex")).rows;
    const auto p = anchor_prf(rows, gold);
    EXPECT_EQ(p.tp, 0) << m;
    EXPECT_EQ(p.fp, static_cast<std::int64_t>(rows.size())) << m;
    EXPECT_EQ(dependency_prf(rows, gold).tp, 0) << m;
  }
}

TEST(ScoringProperty, MatchesBruteForceOracle) {
  vt::Rng rng(41);
  for (int trial = 0; trial < 500; ++trial) {
    const auto gold = vt::random_valid_graph(rng, static_cast<std::size_t>(vt::uniform(rng, 0, 12)), true);
    const auto pred = perturb(rng, gold);
    const auto a = anchor_prf(pred, gold);
    const auto oa = oracle_anchor(pred, gold);
    ASSERT_EQ(a.tp, oa.tp);
    ASSERT_EQ(a.fp, oa.fp);
    ASSERT_EQ(a.fn, oa.fn);
    const auto d = dependency_prf(pred, gold);
    const auto od = oracle_dependency(pred, gold);
    ASSERT_EQ(d.tp, od.tp);
    ASSERT_EQ(d.fp, od.fp);
    ASSERT_EQ(d.fn, od.fn);
  }
}

TEST(ScoringProperty, MaxMatchingAgreesWithSubsetDp) {
  vt::Rng rng(42);
  for (int trial = 0; trial < 500; ++trial) {
    const auto l = static_cast<std::size_t>(vt::uniform(rng, 0, 12));
    const auto r = static_cast<std::size_t>(vt::uniform(rng, 0, 12));
    std::vector<std::vector<std::size_t>> adj(l);
    std::vector<std::vector<bool>> ok(l, std::vector<bool>(r));
    for (std::size_t i = 0; i < l; ++i) {
      for (std::size_t j = 0; j < r; ++j) {
        if (vt::coin(rng, 0.3)) {
          adj[i].push_back(j);
          ok[i][j] = true;
        }
      }
    }
    ASSERT_EQ(detail::max_matching(adj, r), brute_matching(ok, r));
  }
}

TEST(ScoringOutput, JsonAndCsv) {
  const auto g = vt::oneshot_graph();
  const auto r = score_run({{g.doc_id, vt::rows_from_graph(g)}}, {g});
  EXPECT_EQ(score_csv_row("m", r), "m,1.0000,1.0000,1.0000,1.0000,1.0000,1.0000,1.0000");
  const auto j = to_json(r);
  EXPECT_DOUBLE_EQ(j.at("harmonic").get<double>(), 1.0);
  EXPECT_EQ(format_fixed(0.12345), "0.1235");
}
