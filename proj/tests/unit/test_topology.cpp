#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <map>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace vista;

namespace {

Anchor A(std::int64_t id, std::int64_t s, std::string w, Role r, std::int64_t h) {
  return {id, {s, s + static_cast<std::int64_t>(w.size())}, w, r, h};
}

NarrativeGraph G(std::vector<Anchor> anchors) {
  NarrativeGraph g;
  g.doc_id = "t";
  g.text = std::string(200, 'x');
  g.anchors = std::move(anchors);
  return g;
}

}  // namespace

TEST(Backbone, ImpulsesInTextualOrder) {
  auto g = G({A(0, 0, "a", Role::Impulse, -1), A(1, 5, "b", Role::Resonance, 0),
              A(2, 10, "c", Role::Impulse, 0), A(3, 15, "d", Role::Impulse, 2)});
  const auto bb = backbone(g);
  ASSERT_EQ(bb.size(), 3u);
  EXPECT_EQ(bb[0].anchor_id, 0);
  EXPECT_EQ(bb[1].anchor_id, 2);
  EXPECT_EQ(bb[2].anchor_id, 3);
  EXPECT_EQ(bb[2].tau, 3);
}

TEST(Backbone, InvalidGraphThrows) {
  auto g = G({A(0, 0, "a", Role::Impulse, 0)});
  EXPECT_THROW(backbone(g), InvalidGraph);
  EXPECT_THROW(vista_coordinates(g), InvalidGraph);
  EXPECT_THROW(cross_dependency_count(g), InvalidGraph);
}

TEST(Coordinates, ImpulseOnlyStory) {
  auto g = G({A(0, 0, "a", Role::Impulse, -1), A(1, 5, "b", Role::Impulse, 0),
              A(2, 10, "c", Role::Impulse, 1)});
  const auto pts = vista_coordinates(g);
  ASSERT_EQ(pts.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(pts[i].x, static_cast<std::int64_t>(i + 1));
    EXPECT_EQ(pts[i].y, 0.0);
    EXPECT_EQ(pts[i].z, 0);
  }
}

TEST(Coordinates, PausesLiftTheirResonance) {
  // I0 <- R1 <- P2 <- P3, R1 <- P4; delta 0.5 gives 3 * 0.5 for R1 and its pauses.
  auto g = G({A(0, 0, "a", Role::Impulse, -1), A(1, 5, "b", Role::Resonance, 0),
              A(2, 10, "c", Role::Pause, 1), A(3, 15, "d", Role::Pause, 2),
              A(4, 20, "e", Role::Pause, 1), A(5, 25, "f", Role::Pause, 0),
              A(6, 30, "g", Role::NonEvent, -1)});
  const auto pts = vista_coordinates(g, DeltaConfig(0.5));
  ASSERT_EQ(pts.size(), 6u);
  EXPECT_DOUBLE_EQ(pts[1].y, 1.5);
  EXPECT_DOUBLE_EQ(pts[2].y, 1.5);
  EXPECT_DOUBLE_EQ(pts[3].y, 1.5);
  EXPECT_DOUBLE_EQ(pts[4].y, 1.5);
  EXPECT_DOUBLE_EQ(pts[5].y, 0.0);
  EXPECT_EQ(pts[5].z, 1);
  for (const auto& p : pts) EXPECT_EQ(p.x, 1);
}

TEST(Coordinates, DependentWithoutImpulseAncestorSitsAtZero) {
  auto g = G({A(0, 0, "a", Role::Resonance, -1), A(1, 5, "b", Role::Pause, 0)});
  const auto pts = vista_coordinates(g, DeltaConfig(0.25));
  EXPECT_EQ(pts[0].x, 0);
  EXPECT_EQ(pts[1].x, 0);
  EXPECT_DOUBLE_EQ(pts[0].y, 0.25);
  EXPECT_DOUBLE_EQ(pts[1].y, 0.25);
}

TEST(Coordinates, OneShotDemonstration) {
  const auto pts = vista_coordinates(vt::oneshot_graph(), DeltaConfig(0.5));
  ASSERT_EQ(pts.size(), 18u);
  const std::vector<std::int64_t> x = {1, 1, 1, 1, 1, 2, 3, 4, 3, 3, 3, 3, 3, 5, 6, 7, 8, 9};
  for (std::size_t i = 0; i < 18; ++i) {
    EXPECT_EQ(pts[i].x, x[i]) << "anchor " << i;
    EXPECT_EQ(pts[i].y, 0.0);
  }
  EXPECT_EQ(pts[3].z, 1);
  EXPECT_EQ(pts[4].z, 1);
}

TEST(Crossings, HandExamples) {
  // 0-2 and 1-3 cross; 0-3 nests around 1-2.
  auto crossing = G({A(0, 0, "a", Role::Impulse, -1), A(1, 5, "b", Role::Resonance, 3),
                     A(2, 10, "c", Role::Resonance, 0), A(3, 15, "d", Role::Impulse, 0)});
  EXPECT_EQ(cross_dependency_count(crossing), 1u);
  auto nested = G({A(0, 0, "a", Role::Impulse, -1), A(1, 5, "b", Role::Impulse, 0),
                   A(2, 10, "c", Role::Resonance, 1), A(3, 15, "d", Role::Resonance, 0)});
  EXPECT_EQ(cross_dependency_count(nested), 0u);
}

TEST(Crossings, SharedEndpointsDoNotCross) {
  auto g = G({A(0, 0, "a", Role::Impulse, -1), A(1, 5, "b", Role::Resonance, 0),
              A(2, 10, "c", Role::Resonance, 0), A(3, 15, "d", Role::Resonance, 0)});
  EXPECT_EQ(cross_dependency_count(g), 0u);
}

TEST(Crossings, LongRangeThreshold) {
  auto g = G({A(0, 0, "a", Role::Impulse, -1), A(1, 5, "b", Role::Resonance, 0),
              A(2, 50, "c", Role::Impulse, 0), A(3, 150, "d", Role::Resonance, 2)});
  EXPECT_EQ(cross_dependency_count(g, CrossDefinition::long_range(4)), 3u);
  EXPECT_EQ(cross_dependency_count(g, CrossDefinition::long_range(50)), 1u);
  EXPECT_EQ(cross_dependency_count(g, CrossDefinition::long_range(100)), 0u);
}

TEST(CrossingsProperty, MatchesQuadraticReference) {
  vt::Rng rng(21);
  for (int i = 0; i < 300; ++i) {
    auto g = vt::random_valid_graph(rng, static_cast<std::size_t>(vt::uniform(rng, 0, 50)), true);
    EXPECT_EQ(cross_dependency_count(g), vt::brute_crossings(g));
  }
}

TEST(CoordinatesProperty, InvariantsOnRandomGraphs) {
  vt::Rng rng(22);
  for (int trial = 0; trial < 1000; ++trial) {
    const double delta = 0.05 + 0.9 * std::uniform_real_distribution<double>(0, 1)(rng);
    auto g = vt::random_valid_graph(rng, static_cast<std::size_t>(vt::uniform(rng, 0, 40)), true);
    const auto pts = vista_coordinates(g, DeltaConfig(delta));

    std::map<std::int64_t, const Anchor*> by_id;
    for (const auto& a : g.anchors) by_id[a.id] = &a;
    std::map<std::int64_t, std::int64_t> tau;
    std::int64_t k = 0;
    for (const auto& a : g.anchors) {
      if (a.role == Role::Impulse) tau[a.id] = ++k;
    }
    const auto bb = backbone(g);
    ASSERT_EQ(static_cast<std::int64_t>(bb.size()), k);
    for (std::size_t i = 0; i < bb.size(); ++i) EXPECT_EQ(bb[i].tau, static_cast<std::int64_t>(i + 1));

    std::size_t events = 0;
    for (const auto& a : g.anchors) events += is_event(a.role) ? 1 : 0;
    ASSERT_EQ(pts.size(), events);

    for (const auto& p : pts) {
      const Anchor& a = *by_id.at(p.anchor_id);
      EXPECT_EQ(p.z == 1, a.role == Role::Pause);
      const Anchor* up = &a;
      while (up->role != Role::Impulse && !up->is_root()) up = by_id.at(up->head);
      EXPECT_EQ(p.x, up->role == Role::Impulse ? tau.at(up->id) : 0);
      EXPECT_GE(p.y, 0.0);
      const double m = p.y / delta;
      EXPECT_NEAR(m, std::round(m), 1e-9);
    }
  }
}
