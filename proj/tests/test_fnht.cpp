#include <doctest.h>

#include <algorithm>

#include "parcomp/enumerate.hpp"
#include "parcomp/errors.hpp"
#include "parcomp/fnht.hpp"
#include "support.hpp"

using namespace parcomp;
using parcomp::testing::path;
using parcomp::testing::set_of;

namespace {

bool has_violation(const FnhtRecord& r, StateSet universe, int max_priority, const std::string& msg) {
  const auto v = validate_fnht(r, universe, max_priority);
  return std::find(v.begin(), v.end(), msg) != v.end();
}

// Root with two pure leaves {p} and {q}; r-labels empty.
FnhtRecord two_leaves() {
  FnhtRecord r;
  r.max_even = 2;
  r.nodes[path("")] = NodeLabels{set_of({0, 1}), {}, {}};
  r.nodes[path("0")] = NodeLabels{set_of({0}), set_of({0}), {}};
  r.nodes[path("1")] = NodeLabels{set_of({1}), set_of({1}), {}};
  return r;
}

// Depth-two tree for π = 4: ε → 0 → 0.s → 0.s.0.
FnhtRecord deep() {
  FnhtRecord r;
  r.max_even = 4;
  r.nodes[path("")] = NodeLabels{set_of({0, 1}), {}, {}};
  r.nodes[path("0")] = NodeLabels{set_of({0, 1}), set_of({0}), set_of({1})};
  r.nodes[path("0.s")] = NodeLabels{set_of({0}), {}, {}};
  r.nodes[path("0.s.0")] = NodeLabels{set_of({0}), set_of({0}), {}};
  return r;
}

}  // namespace

TEST_CASE("NodeId paths") {
  CHECK(path("").is_root());
  CHECK(path("").is_stepchild());
  CHECK_FALSE(path("0").is_stepchild());
  CHECK(path("0.s").is_stepchild());
  CHECK(path("0.s.1").to_string() == "0.s.1");
  CHECK(path("0.s.1").parent() == path("0.s"));
  CHECK(path("2").to_string() == "2");
  CHECK_THROWS_AS(path("0..1"), FormatError);
  CHECK_THROWS_AS(path("x"), FormatError);
  // Natural children come before the stepchild in path order.
  CHECK(path("0.1") < path("0.s"));
}

TEST_CASE("level_of examples") {
  CHECK(level_of(path(""), 2) == 2);
  CHECK(level_of(path("0.s"), 4) == 2);
  CHECK(level_of(path("0.s.1"), 6) == 4);
}

TEST_CASE("validate_fnht examples") {
  const StateSet q = set_of({0});
  CHECK(validate_fnht(testing::t0_record(), q, 2).empty());

  auto bad = testing::t0_record();
  bad.nodes[path("")].recurrent = q;
  CHECK(has_violation(bad, q, 2, "stepchild partition not disjoint"));

  auto root_leaf = testing::root_leaf_record(q);
  CHECK(has_violation(root_leaf, q, 2, "root leaf requires odd max priority"));
  CHECK(validate_fnht(root_leaf, q, 3).empty());
}

TEST_CASE("validate_fnht flags each constraint") {
  const StateSet pq = set_of({0, 1});
  CHECK(validate_fnht(two_leaves(), pq, 2).empty());
  CHECK(validate_fnht(deep(), pq, 4).empty());
  CHECK(validate_fnht(deep(), pq, 5).empty());

  CHECK(has_violation(FnhtRecord{}, pq, 2, "tree is empty"));

  {
    auto r = two_leaves();
    r.nodes.erase(path(""));
    CHECK(has_violation(r, pq, 2, "tree has no root"));
  }
  CHECK(has_violation(two_leaves(), pq, 4, "max even priority inconsistent with max priority"));
  {
    auto r = two_leaves();
    r.nodes.erase(path("0"));
    CHECK(has_violation(r, pq, 2, "tree not order closed"));
  }
  {
    auto r = deep();
    r.nodes.erase(path("0.s"));
    CHECK(has_violation(r, pq, 4, "tree not prefix closed"));
  }
  {
    auto r = two_leaves();
    r.nodes[path("s")] = NodeLabels{set_of({0}), {}, {}};
    CHECK(has_violation(r, pq, 2, "stepchildren have only natural children"));
  }
  {
    auto r = two_leaves();
    r.nodes[path("0.0")] = NodeLabels{set_of({0}), set_of({0}), {}};
    CHECK(has_violation(r, pq, 2, "natural children have only stepchildren"));
  }
  {
    auto r = two_leaves();
    r.nodes[path("1")] = NodeLabels{{}, {}, {}};
    CHECK(has_violation(r, pq, 2, "empty state label"));
  }
  {
    auto r = two_leaves();
    r.nodes[path("")].states = set_of({0, 1, 2});
    r.nodes[path("")].recurrent = set_of({2});
    CHECK(has_violation(r, pq, 2, "labels outside the state universe"));
  }
  {
    // With π = 2 the stepchild 0.s would sit at level 0.
    auto r = deep();
    r.max_even = 2;
    CHECK(has_violation(r, pq, 2, "level below 2"));
  }
  {
    auto r = deep();
    r.nodes.erase(path("0.s.0"));
    CHECK(has_violation(r, pq, 4, "only natural children may be leaves"));
  }
  {
    auto r = two_leaves();
    r.nodes[path("")].pure = set_of({0});
    CHECK(has_violation(r, pq, 2, "stepchild has pure states"));
  }
  {
    auto r = two_leaves();
    r.nodes[path("")].states = set_of({0, 1});
    r.nodes[path("1")] = NodeLabels{set_of({0}), set_of({0}), {}};
    CHECK(has_violation(r, pq, 2, "stepchild partition not disjoint"));
  }
  {
    auto r = two_leaves();
    r.nodes.erase(path("1"));
    CHECK(has_violation(r, pq, 2, "stepchild states are not recurrent plus children"));
  }
  {
    auto r = two_leaves();
    r.nodes[path("0")] = NodeLabels{set_of({0}), {}, set_of({0})};
    CHECK(has_violation(r, pq, 2, "natural child has no pure states"));
  }
  {
    auto r = two_leaves();
    r.nodes[path("0")] = NodeLabels{set_of({0}), set_of({0}), set_of({1})};
    CHECK(has_violation(r, pq, 2, "natural child states are not pure plus recurrent"));
  }
  {
    auto r = two_leaves();
    r.nodes[path("0")] = NodeLabels{set_of({0}), set_of({0}), set_of({0})};
    CHECK(has_violation(r, pq, 2, "natural child pure and recurrent overlap"));
  }
  {
    auto r = deep();
    r.nodes[path("0.s")].states = set_of({0, 1});
    r.nodes[path("0.s")].recurrent = set_of({1});
    CHECK(has_violation(r, pq, 4, "stepchild states differ from parent pure states"));
  }
}

TEST_CASE("is_full_fnht and is_full_marking") {
  auto t0 = Fnht::from_record(testing::t0_record());
  CHECK(is_full_fnht(t0, set_of({0})));
  CHECK_FALSE(is_full_fnht(t0, set_of({0, 1})));
  auto rl = Fnht::from_record(testing::root_leaf_record(set_of({0, 1})));
  CHECK(is_full_fnht(rl, set_of({0, 1})));

  Mft m0{t0, Marker{1, MarkerKind::pure}, set_of({0})};
  CHECK(is_full_marking(m0));

  FnhtRecord wide;
  wide.max_even = 2;
  wide.nodes[path("")] = NodeLabels{set_of({0, 1}), {}, {}};
  wide.nodes[path("0")] = NodeLabels{set_of({0, 1}), set_of({0, 1}), {}};
  Mft partial{Fnht::from_record(wide), Marker{1, MarkerKind::pure}, set_of({0})};
  CHECK_FALSE(is_full_marking(partial));
  CHECK(validate_mft(partial, set_of({0, 1}), 2).empty());

  Mft rl_m{rl, Marker{0, MarkerKind::recurrent}, set_of({0, 1})};
  CHECK(is_full_marking(rl_m));
}

TEST_CASE("validate_mft rejects bad markings") {
  auto t0 = Fnht::from_record(testing::t0_record());
  const StateSet q = set_of({0});
  CHECK(validate_mft(Mft{t0, Marker{1, MarkerKind::pure}, q}, q, 2).empty());
  CHECK_FALSE(validate_mft(Mft{t0, Marker{1, MarkerKind::pure}, StateSet{}}, q, 2).empty());
  CHECK_FALSE(validate_mft(Mft{t0, Marker{0, MarkerKind::recurrent}, q}, q, 2).empty());
  CHECK_FALSE(validate_mft(Mft{t0, Marker{0, MarkerKind::pure}, q}, q, 2).empty());
}

TEST_CASE("marker_set of pure markers on inner nodes is empty") {
  auto t = Fnht::from_record(deep());
  CHECK(marker_set(t, Marker{1, MarkerKind::pure}).empty());
  CHECK(marker_set(t, Marker{1, MarkerKind::recurrent}) == set_of({1}));
  CHECK(marker_set(t, Marker{3, MarkerKind::pure}) == set_of({0}));
}

TEST_CASE("next_marker examples") {
  auto t0 = Fnht::from_record(testing::t0_record());
  auto [m, s] = next_marker(t0, Marker{1, MarkerKind::pure});
  CHECK(m == Marker{1, MarkerKind::pure});
  CHECK(s == set_of({0}));

  auto rl = Fnht::from_record(testing::root_leaf_record(set_of({0})));
  auto [m2, s2] = next_marker(rl, Marker{0, MarkerKind::recurrent});
  CHECK(m2 == Marker{0, MarkerKind::recurrent});
  CHECK(s2 == set_of({0}));

  auto two = Fnht::from_record(two_leaves());
  auto [m3, s3] = next_marker(two, Marker{1, MarkerKind::pure});
  CHECK(m3 == Marker{2, MarkerKind::pure});
  CHECK(s3 == set_of({1}));
  auto [m4, s4] = next_marker(two, Marker{2, MarkerKind::pure});
  CHECK(m4 == Marker{1, MarkerKind::pure});
  CHECK(s4 == set_of({0}));
}

TEST_CASE("round robin order is pre-order with r before p") {
  auto t = Fnht::from_record(deep());
  const auto c = marker_candidates(t);
  REQUIRE(c.size() == 2);
  CHECK(c[0] == Marker{1, MarkerKind::recurrent});
  CHECK(c[1] == Marker{3, MarkerKind::pure});
  CHECK(first_marker(t).first == c[0]);
}

TEST_CASE("every valid FNHT has markers, at most |Q| of them, and next_marker is fair") {
  for (int n = 1; n <= 3; ++n) {
    for (int pi = 2; pi <= 4; ++pi) {
      const StateSet q = StateSet::first_n(n);
      for (const auto& t : enumerate_fnhts(q, pi)) {
        const auto cands = marker_candidates(t);
        REQUIRE_FALSE(cands.empty());
        CHECK(static_cast<int>(cands.size()) <= n);
        for (const auto& start : cands) {
          std::vector<Marker> seen{start};
          Marker cur = start;
          for (std::size_t k = 1; k < cands.size(); ++k) {
            cur = next_marker(t, cur).first;
            CHECK(std::find(seen.begin(), seen.end(), cur) == seen.end());
            seen.push_back(cur);
          }
          CHECK(next_marker(t, cur).first == start);
          CHECK(next_marker(t, cur).second == marker_set(t, start));
        }
      }
    }
  }
}

TEST_CASE("FNHT and MFT JSON round trip") {
  const auto names = default_state_names(2);
  for (const auto& m : enumerate_mfts(StateSet::first_n(2), 4)) {
    const auto j = to_json(m, names);
    CHECK(mft_from_json(nlohmann::json::parse(j.dump()), names) == m);
    const auto jt = to_json(m.tree, names);
    CHECK(fnht_from_json(nlohmann::json::parse(jt.dump()), names) == m.tree);
  }
  auto t0 = Fnht::from_record(testing::t0_record());
  const auto j = to_json(Mft{t0, Marker{1, MarkerKind::pure}, set_of({0})}, {"q"});
  CHECK(j.dump() ==
        R"({"tree":{"max_even":2,"nodes":[{"node":"","states":["q"],"pure":[],"recurrent":[]},)"
        R"({"node":"0","states":["q"],"pure":["q"],"recurrent":[]}]},"marker":{"node":"0","kind":"p"},"marking":["q"]})");
}
