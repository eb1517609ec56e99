#include <gtest/gtest.h>

#include "support/fixtures.hpp"

using namespace vista;

namespace {

Anchor A(std::int64_t id, std::int64_t s, std::int64_t e, std::string w, Role r, std::int64_t h) {
  return {id, {s, e}, std::move(w), r, h};
}

NarrativeGraph G(std::string text, std::vector<Anchor> anchors) {
  NarrativeGraph g;
  g.doc_id = "t";
  g.text = std::move(text);
  g.anchors = std::move(anchors);
  return g;
}

std::vector<std::int64_t> ids_with(const ValidationReport& r, ViolationKind k) {
  std::vector<std::int64_t> out;
  for (const auto& v : r.violations) {
    if (v.kind == k) out.push_back(v.anchor_id);
  }
  return out;
}

}  // namespace

TEST(Roles, TransitionsFollowRole) {
  EXPECT_EQ(role_transition(Role::Impulse), TransitionKind::Advance);
  EXPECT_EQ(role_transition(Role::Resonance), TransitionKind::MicroShift);
  EXPECT_EQ(role_transition(Role::Pause), TransitionKind::Freeze);
  EXPECT_EQ(role_transition(Role::NonEvent), TransitionKind::None);
}

TEST(Roles, ParseIsCaseInsensitiveAndRejectsUnknown) {
  EXPECT_EQ(parse_role("impulse"), Role::Impulse);
  EXPECT_EQ(parse_role("PAUSE"), Role::Pause);
  EXPECT_EQ(parse_role("NonEvent"), Role::NonEvent);
  EXPECT_FALSE(parse_role("Event").has_value());
  for (Role r : {Role::Impulse, Role::Resonance, Role::Pause, Role::NonEvent}) {
    EXPECT_EQ(parse_role(to_string(r)), r);
  }
}

TEST(Delta, RangeIsOpenUnitInterval) {
  EXPECT_DOUBLE_EQ(DeltaConfig{}.value(), 0.5);
  EXPECT_DOUBLE_EQ(DeltaConfig(0.25).value(), 0.25);
  EXPECT_THROW(DeltaConfig(0.0), Error);
  EXPECT_THROW(DeltaConfig(1.0), Error);
  EXPECT_THROW(DeltaConfig(-0.1), Error);
}

TEST(Validate, EmptyGraphIsValid) {
  EXPECT_TRUE(validate(G("", {})).valid());
}

TEST(Validate, SingleRootImpulseIsValid) {
  auto r = validate(G("ran", {A(0, 0, 3, "ran", Role::Impulse, -1)}));
  EXPECT_TRUE(r.valid());
}

TEST(Validate, SelfLoop) {
  auto r = validate(G("ran", {A(0, 0, 3, "ran", Role::Impulse, 0)}));
  EXPECT_TRUE(r.has(ViolationKind::SelfLoop));
}

TEST(Validate, DanglingHead) {
  auto r = validate(G("ran", {A(0, 0, 3, "ran", Role::Impulse, 7)}));
  EXPECT_TRUE(r.has(ViolationKind::DanglingHead));
}

TEST(Validate, CycleBetweenImpulses) {
  auto r = validate(G("ran hid", {A(0, 0, 3, "ran", Role::Impulse, 1),
                                  A(1, 4, 7, "hid", Role::Impulse, 0)}));
  EXPECT_TRUE(r.has(ViolationKind::Cycle));
  EXPECT_FALSE(validate(G("ran hid", {A(0, 0, 3, "ran", Role::Impulse, 1),
                                      A(1, 4, 7, "hid", Role::Impulse, 0)}),
                        ValidationMode::Relaxed)
                   .valid());
}

TEST(Validate, DuplicateIdAndSpanChecks) {
  auto r = validate(G("ran hid", {A(0, 0, 3, "ran", Role::Impulse, -1),
                                  A(0, 4, 7, "hid", Role::Impulse, -1)}));
  EXPECT_TRUE(r.has(ViolationKind::DuplicateId));
  EXPECT_TRUE(validate(G("ran", {A(0, 3, 1, "ran", Role::Impulse, -1)})).has(ViolationKind::InvalidSpan));
  EXPECT_TRUE(validate(G("ran", {A(0, 0, 9, "ran", Role::Impulse, -1)})).has(ViolationKind::SpanOutOfBounds));
  EXPECT_TRUE(validate(G("ran", {A(0, 0, 3, "", Role::Impulse, -1)})).has(ViolationKind::EmptyWord));
  EXPECT_TRUE(validate(G("ran hid", {A(0, 4, 7, "hid", Role::Impulse, -1),
                                     A(1, 0, 3, "ran", Role::Impulse, 0)}))
                  .has(ViolationKind::OutOfOrder));
}

TEST(Validate, NonEventCannotParticipate) {
  auto r = validate(G("ran the", {A(0, 0, 3, "ran", Role::Impulse, -1),
                                  A(1, 4, 7, "the", Role::NonEvent, 0)}));
  EXPECT_TRUE(r.has(ViolationKind::NonEventHasHead));
  auto r2 = validate(G("the ran", {A(0, 0, 3, "the", Role::NonEvent, -1),
                                   A(1, 4, 7, "ran", Role::Impulse, 0)}));
  EXPECT_TRUE(r2.has(ViolationKind::NonEventHasDependent));
  EXPECT_TRUE(validate(G("the", {A(0, 0, 3, "the", Role::NonEvent, -1)})).valid());
}

TEST(Validate, RoleCompatibility) {
  const std::string t = "aaa bbb";
  auto pair = [&](Role child, Role head) {
    return G(t, {A(0, 0, 3, "aaa", head, -1), A(1, 4, 7, "bbb", child, 0)});
  };
  EXPECT_TRUE(validate(pair(Role::Impulse, Role::Impulse)).valid());
  EXPECT_TRUE(validate(pair(Role::Resonance, Role::Impulse)).valid());
  EXPECT_TRUE(validate(pair(Role::Pause, Role::Impulse)).valid());
  EXPECT_TRUE(validate(pair(Role::Pause, Role::Resonance)).valid());
  EXPECT_TRUE(validate(pair(Role::Impulse, Role::Resonance)).has(ViolationKind::ImpulseHeadNotImpulse));
  EXPECT_TRUE(validate(pair(Role::Impulse, Role::Pause)).has(ViolationKind::ImpulseHeadNotImpulse));
  EXPECT_TRUE(validate(pair(Role::Resonance, Role::Pause)).has(ViolationKind::ResonanceHeadPause));
  EXPECT_TRUE(validate(pair(Role::Resonance, Role::Pause), ValidationMode::Relaxed)
                  .has(ViolationKind::ResonanceHeadPause));
  EXPECT_TRUE(validate(pair(Role::Resonance, Role::Resonance)).has(ViolationKind::ResonanceHeadResonance));
  EXPECT_TRUE(validate(pair(Role::Pause, Role::Pause)).has(ViolationKind::PauseHeadPause));
  EXPECT_TRUE(validate(pair(Role::Resonance, Role::Resonance), ValidationMode::Relaxed).valid());
  EXPECT_TRUE(validate(pair(Role::Pause, Role::Pause), ValidationMode::Relaxed).valid());
}

TEST(Validate, MultipleRootsOnlyAddNote) {
  auto r = validate(G("ran hid", {A(0, 0, 3, "ran", Role::Impulse, -1),
                                  A(1, 4, 7, "hid", Role::Resonance, -1)}));
  EXPECT_TRUE(r.valid());
  EXPECT_FALSE(r.notes.empty());
}

TEST(Validate, OneShotChainsFlaggedOnlyInStrictMode) {
  const auto g = vt::oneshot_graph();
  ASSERT_EQ(g.anchors.size(), 18u);
  const auto strict = validate(g, ValidationMode::Strict);
  EXPECT_EQ(ids_with(strict, ViolationKind::ResonanceHeadResonance),
            (std::vector<std::int64_t>{2, 9, 10, 11, 12}));
  EXPECT_EQ(ids_with(strict, ViolationKind::PauseHeadPause), (std::vector<std::int64_t>{4}));
  EXPECT_EQ(strict.violations.size(), 6u);
  EXPECT_TRUE(validate(g, ValidationMode::Relaxed).valid());
}

TEST(ValidateProperty, StrictValidImpliesRelaxedValid) {
  vt::Rng rng(11);
  int strict_valid = 0;
  for (int i = 0; i < 400; ++i) {
    auto g = vt::random_valid_graph(rng, static_cast<std::size_t>(vt::uniform(rng, 0, 25)), vt::coin(rng));
    // Sprinkle arbitrary corruption so both outcomes occur.
    if (!g.anchors.empty() && vt::coin(rng, 0.3)) {
      auto& a = g.anchors[static_cast<std::size_t>(vt::uniform(rng, 0, g.anchors.size() - 1))];
      a.head = vt::uniform(rng, -1, static_cast<std::int64_t>(g.anchors.size()));
    }
    if (validate(g, ValidationMode::Strict).valid()) {
      ++strict_valid;
      EXPECT_TRUE(validate(g, ValidationMode::Relaxed).valid());
    }
  }
  EXPECT_GT(strict_valid, 50);
}

TEST(ValidateProperty, GeneratorProducesValidGraphs) {
  vt::Rng rng(12);
  for (int i = 0; i < 200; ++i) {
    const bool relaxed = vt::coin(rng);
    auto g = vt::random_valid_graph(rng, static_cast<std::size_t>(vt::uniform(rng, 0, 30)), relaxed);
    EXPECT_TRUE(validate(g, relaxed ? ValidationMode::Relaxed : ValidationMode::Strict).valid());
  }
}
