#include "support.hpp"

#include <algorithm>

#include "parcomp/errors.hpp"
#include "parcomp/priority.hpp"

namespace parcomp::testing {

ParityAutomaton random_automaton(std::mt19937& rng, int max_states, int max_letters) {
  while (true) {
    const int n = std::uniform_int_distribution<int>(1, max_states)(rng);
    const int k = std::uniform_int_distribution<int>(1, max_letters)(rng);
    std::vector<int> pi;
    for (int p = 1; p <= 4; ++p) {
      if (std::bernoulli_distribution(0.6)(rng)) pi.push_back(p);
    }
    if (pi.empty()) continue;
    std::vector<std::string> states, letters;
    for (int i = 0; i < n; ++i) states.push_back("q" + std::to_string(i));
    for (int i = 0; i < k; ++i) letters.push_back(std::string(1, static_cast<char>('a' + i)));
    StateSet init;
    while (init.empty()) {
      for (int q = 0; q < n; ++q) {
        if (std::bernoulli_distribution(0.5)(rng)) init.insert(q);
      }
    }
    std::vector<ParityTransition> ts;
    std::uniform_int_distribution<std::size_t> pick(0, pi.size() - 1);
    for (int s = 0; s < n; ++s)
      for (int a = 0; a < k; ++a)
        for (int t = 0; t < n; ++t) {
          if (std::bernoulli_distribution(0.45)(rng)) ts.push_back({s, a, t, pi[pick(rng)]});
        }
    ParityAutomaton p = normalize(ParityAutomaton(states, letters, init, ts, pi));
    if (opt_priority(p.priorities()) >= 2) return p;
  }
}

namespace {

struct ShapeNode {
  NodeId id;
  int parent;
};

// Alternating shapes: stepchildren get 0..n natural children, natural
// children optionally get a stepchild while the level stays ≥ 2.
void shapes_below(const NodeId& id, int level, int n, std::vector<std::vector<NodeId>>& out) {
  std::vector<std::vector<NodeId>> result;
  if (id.is_stepchild()) {
    // Cartesian product over the sub-shapes of c natural children.
    for (int k = 0; k <= n; ++k) {
      std::vector<std::vector<NodeId>> partial{{id}};
      for (int c = 0; c < k; ++c) {
        std::vector<std::vector<NodeId>> sub;
        shapes_below(id.natural_child(c), level, n, sub);
        std::vector<std::vector<NodeId>> next;
        for (const auto& base : partial)
          for (const auto& s : sub) {
            auto x = base;
            x.insert(x.end(), s.begin(), s.end());
            next.push_back(std::move(x));
          }
        partial = std::move(next);
      }
      result.insert(result.end(), partial.begin(), partial.end());
    }
  } else {
    result.push_back({id});
    if (level - 2 >= 2) {
      std::vector<std::vector<NodeId>> sub;
      shapes_below(id.stepchild(), level - 2, n, sub);
      for (auto& s : sub) {
        std::vector<NodeId> x{id};
        x.insert(x.end(), s.begin(), s.end());
        result.push_back(std::move(x));
      }
    }
  }
  out = std::move(result);
}

}  // namespace

std::set<std::string> brute_force_fnht_keys(int num_states, int max_priority) {
  const int max_even = max_priority % 2 == 0 ? max_priority : max_priority - 1;
  const StateSet universe = StateSet::first_n(num_states);
  std::vector<StateSet> subsets;
  universe.for_each_subset([&](StateSet s) { subsets.push_back(s); });

  std::vector<std::vector<NodeId>> shapes;
  shapes_below(NodeId{}, max_even, num_states, shapes);

  std::set<std::string> keys;
  for (auto ids : shapes) {
    std::sort(ids.begin(), ids.end());
    std::vector<int> parent(ids.size(), -1);
    for (std::size_t i = 1; i < ids.size(); ++i)
      parent[i] = static_cast<int>(std::find(ids.begin(), ids.end(), ids[i].parent()) - ids.begin());

    std::vector<NodeLabels> labels(ids.size());
    std::function<void(std::size_t)> assign = [&](std::size_t i) {
      if (i == ids.size()) {
        FnhtRecord r;
        r.max_even = max_even;
        for (std::size_t j = 0; j < ids.size(); ++j) r.nodes[ids[j]] = labels[j];
        if (validate_fnht(r, universe, max_priority).empty()) keys.insert(Fnht::from_record(r).key());
        return;
      }
      for (StateSet states : subsets) {
        if (states.empty()) continue;
        // Necessary: a node's states lie inside its parent's states.
        if (parent[i] >= 0 && !states.subset_of(labels[static_cast<std::size_t>(parent[i])].states)) continue;
        for (StateSet pure : subsets) {
          for (StateSet rec : subsets) {
            // Node-local necessary conditions only.
            if (ids[i].is_stepchild()) {
              if (!pure.empty() || !rec.subset_of(states)) continue;
            } else {
              if (pure.empty() || !pure.disjoint(rec) || (pure | rec) != states) continue;
            }
            labels[i] = NodeLabels{states, pure, rec};
            assign(i + 1);
          }
        }
      }
    };
    assign(0);
  }
  return keys;
}

}  // namespace parcomp::testing
