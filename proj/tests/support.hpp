#pragma once

#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "parcomp/automata.hpp"
#include "parcomp/fnht.hpp"

namespace parcomp::testing {

/// One state q, one letter a, self-loop with the given priority.
inline ParityAutomaton loop(int priority, std::vector<int> declared = {1, 2}) {
  return ParityAutomaton({"q"}, {"a"}, StateSet::single(0), {{0, 0, 0, priority}}, declared);
}

/// States {a,b}, letter σ: (a,σ,a):1, (a,σ,b):2, (b,σ,b):3.
inline ParityAutomaton p2() {
  return ParityAutomaton({"a", "b"}, {"s"}, StateSet::single(0), {{0, 0, 0, 1}, {0, 0, 1, 2}, {1, 0, 1, 3}});
}

inline StateSet set_of(std::initializer_list<int> qs) {
  StateSet s;
  for (int q : qs) s.insert(q);
  return s;
}

inline NodeId path(const std::string& s) { return NodeId::parse(s); }

/// t0: tree {ε, 0} over {q} with l_s(0) = l_p(0) = {q}.
inline FnhtRecord t0_record() {
  FnhtRecord r;
  r.max_even = 2;
  r.nodes[path("")] = NodeLabels{set_of({0}), {}, {}};
  r.nodes[path("0")] = NodeLabels{set_of({0}), set_of({0}), {}};
  return r;
}

/// The root-leaf tree over `states` with l_r(ε) = states.
inline FnhtRecord root_leaf_record(StateSet states) {
  FnhtRecord r;
  r.max_even = 2;
  r.nodes[path("")] = NodeLabels{states, {}, states};
  return r;
}

/// Seeded random normalized automaton with n ≤ 3 states, ≤ 2 letters and Π
/// drawn from a subset of {1,2,3,4} whose normal form has max even ≥ 2.
ParityAutomaton random_automaton(std::mt19937& rng, int max_states = 3, int max_letters = 2);

/// Independent brute-force FNHT generator: enumerates every alternating tree
/// shape whose levels stay ≥ 2 (stepchild leaves included) and every label
/// assignment passing node-local necessary conditions, then filters with
/// validate_fnht. Returns canonical keys.
std::set<std::string> brute_force_fnht_keys(int num_states, int max_priority);

}  // namespace parcomp::testing
