#include <doctest.h>

#include <map>
#include <random>

#include "parcomp/analysis.hpp"
#include "parcomp/complement.hpp"
#include "parcomp/enumerate.hpp"
#include "parcomp/errors.hpp"
#include "support.hpp"

using namespace parcomp;
using parcomp::testing::loop;
using parcomp::testing::set_of;

namespace {

Mft m0() { return Mft{Fnht::from_record(testing::t0_record()), Marker{1, MarkerKind::pure}, set_of({0})}; }

Mft root_leaf_mft() {
  return Mft{Fnht::from_record(testing::root_leaf_record(set_of({0}))), Marker{0, MarkerKind::recurrent},
             set_of({0})};
}

}  // namespace

TEST_CASE("delta and delta_i on P2") {
  const auto p = testing::p2();
  CHECK(delta(p, set_of({0}), 0) == set_of({0, 1}));
  CHECK(delta(p, StateSet{}, 0).empty());
  CHECK(delta(p, set_of({0, 1}), 0) == set_of({0, 1}));
  CHECK(delta_i(p, set_of({0}), 0, 2) == set_of({1}));
  CHECK(delta_i(p, set_of({1}), 0, 1).empty());
  CHECK(delta_i(p, set_of({0, 1}), 0, 3) == set_of({0, 1}));
}

TEST_CASE("subset_step") {
  const auto l = loop(1);
  auto s1 = subset_step(l, set_of({0}), 0);
  CHECK(std::get<SubsetState>(s1.successor).states == set_of({0}));
  CHECK_FALSE(s1.accepting);
  auto s2 = subset_step(l, StateSet{}, 0);
  CHECK(std::get<SubsetState>(s2.successor).states.empty());
  CHECK(s2.accepting);
  auto s3 = subset_step(testing::p2(), set_of({0}), 0);
  CHECK(std::get<SubsetState>(s3.successor).states == set_of({0, 1}));
  CHECK_FALSE(s3.accepting);
}

TEST_CASE("transfer_targets") {
  auto t = transfer_targets(loop(1), set_of({0}), 0);
  REQUIRE(t.size() == 1);
  CHECK(t[0] == m0());
  CHECK(transfer_targets(loop(1), StateSet{}, 0).empty());
  auto t3 = transfer_targets(loop(1, {1, 2, 3}), set_of({0}), 0);
  REQUIRE(t3.size() == 2);
  CHECK(((t3[0] == m0() && t3[1] == root_leaf_mft()) || (t3[1] == m0() && t3[0] == root_leaf_mft())));
}

TEST_CASE("mft_step micro-traces") {
  CHECK_FALSE(mft_step(loop(2), m0(), 0).has_value());

  auto a = mft_step(loop(1), m0(), 0);
  REQUIRE(a.has_value());
  CHECK(std::get<Mft>(a->successor) == m0());
  CHECK(a->accepting);

  auto b = mft_step(loop(2, {1, 2, 3}), root_leaf_mft(), 0);
  REQUIRE(b.has_value());
  CHECK(std::get<Mft>(b->successor) == root_leaf_mft());
  CHECK_FALSE(b->accepting);

  auto c = mft_step(loop(3, {1, 2, 3}), root_leaf_mft(), 0);
  REQUIRE(c.has_value());
  CHECK(std::get<Mft>(c->successor) == root_leaf_mft());
  CHECK(c->accepting);
}

TEST_CASE("mft_step prunes younger siblings and advances the marker") {
  // States {x,y}; one letter maps both states onto both with priority 1.
  ParityAutomaton p({"x", "y"}, {"a"}, set_of({0, 1}),
                    {{0, 0, 0, 1}, {0, 0, 1, 1}, {1, 0, 0, 1}, {1, 0, 1, 1}}, std::vector<int>{1, 2});
  FnhtRecord r;
  r.max_even = 2;
  r.nodes[testing::path("")] = NodeLabels{set_of({0, 1}), {}, {}};
  r.nodes[testing::path("0")] = NodeLabels{set_of({0}), set_of({0}), {}};
  r.nodes[testing::path("1")] = NodeLabels{set_of({1}), set_of({1}), {}};
  Mft m{Fnht::from_record(r), Marker{1, MarkerKind::pure}, set_of({0})};
  // The older child absorbs everything, so the younger one empties and blocks.
  CHECK_FALSE(mft_step(p, m, 0).has_value());

  // With identity moves the tree survives; Q_m drains via δ_{-1} = ∅.
  ParityAutomaton id({"x", "y"}, {"a"}, set_of({0, 1}), {{0, 0, 0, 1}, {1, 0, 1, 1}}, std::vector<int>{1, 2});
  auto s = mft_step(id, m, 0);
  REQUIRE(s.has_value());
  CHECK(s->accepting);
  const auto& next = std::get<Mft>(s->successor);
  CHECK(next.tree == m.tree);
  CHECK(next.marker == Marker{2, MarkerKind::pure});
  CHECK(next.marking == set_of({1}));
}

TEST_CASE("ComplementStepper domain checks") {
  CHECK_THROWS_AS(ComplementStepper(loop(1, {0, 1})), DomainError);
  ParityAutomaton raw({"q"}, {"a"}, set_of({0}), {{0, 0, 0, 4}});
  CHECK_THROWS_AS(ComplementStepper{raw}, DomainError);
  CHECK_THROWS_AS(build_complement(raw), DomainError);
}

TEST_CASE("build_complement on the loop automata") {
  auto c1 = build_complement(loop(1));
  CHECK(c1.automaton.num_states() == 2);
  CHECK(c1.subset_states == 1);
  CHECK(c1.tree_states == 1);
  CHECK(c1.automaton.state_names()[0] == "S:{q}");
  CHECK(buchi_lasso_member(c1.automaton, LassoWord{{}, {0}}));

  auto c2 = build_complement(loop(2));
  CHECK(buchi_emptiness(c2.automaton).empty);
  CHECK_FALSE(buchi_lasso_member(c2.automaton, LassoWord{{}, {0}}));

  CHECK_THROWS_AS(build_complement(testing::p2(), {.state_cap = 2}), CapExceeded);
}

TEST_CASE("complement step properties on random automata") {
  std::mt19937 rng(2024);
  for (int round = 0; round < 40; ++round) {
    const auto p = testing::random_automaton(rng);
    const StateSet q = p.all_states();
    const int pi = p.priorities().back();
    ComplementStepper stepper(p);

    // Subset phase: one subset successor accepting only on ∅; transfers never accept.
    q.for_each_subset([&](StateSet s) {
      for (int a = 0; a < p.num_letters(); ++a) {
        int subset_succ = 0;
        for (const auto& st : stepper.successors(SubsetState{s}, a)) {
          if (const auto* sub = std::get_if<SubsetState>(&st.successor)) {
            ++subset_succ;
            CHECK(sub->states == delta(p, s, a));
            CHECK(st.accepting == s.empty());
          } else {
            CHECK_FALSE(st.accepting);
            CHECK(std::get<Mft>(st.successor).tree.root_states() == delta(p, s, a));
          }
        }
        CHECK(subset_succ == 1);
      }
    });

    // Tree phase: determinism, tree preservation, label soundness.
    for (const auto& m : enumerate_mfts(q, pi)) {
      for (int a = 0; a < p.num_letters(); ++a) {
        const auto out = mft_step(p, m, a);
        const auto again = mft_step(p, m, a);
        REQUIRE(out.has_value() == again.has_value());
        if (!out) continue;
        const auto& next = std::get<Mft>(out->successor);
        CHECK(next == std::get<Mft>(again->successor));
        CHECK(out->accepting == again->accepting);
        CHECK(next.tree.shape().key() == m.tree.shape().key());
        CHECK(validate_mft(next, q, pi).empty());
        for (int v = 0; v < m.tree.size(); ++v)
          CHECK(next.tree.labels(v).states.subset_of(delta(p, m.tree.labels(v).states, a)));
      }
    }

    // Explicit automaton: T1 and T2 are deterministic.
    const auto c = build_complement(p);
    const auto& b = c.automaton;
    for (int s = 0; s < b.num_states(); ++s) {
      const bool subset = b.state_names()[static_cast<std::size_t>(s)].starts_with("S:");
      std::map<int, int> per_letter;
      for (int ti : b.outgoing(s)) {
        const auto& t = b.transitions()[static_cast<std::size_t>(ti)];
        const bool to_subset = b.state_names()[static_cast<std::size_t>(t.to)].starts_with("S:");
        if (subset && !to_subset) {
          CHECK_FALSE(t.accepting);
          continue;
        }
        CHECK((subset || !to_subset));
        ++per_letter[t.letter];
      }
      for (const auto& [letter, count] : per_letter) CHECK(count == 1);
      if (subset) CHECK(static_cast<int>(per_letter.size()) == b.num_letters());
    }
  }
}
