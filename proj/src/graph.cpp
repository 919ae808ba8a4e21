#include "parcomp/graph.hpp"

#include <algorithm>
#include <utility>

namespace parcomp {

std::vector<int> strongly_connected_components(const WeightedGraph& g, int max_weight) {
  const int n = static_cast<int>(g.size());
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<char> on_stack(n, 0);
  std::vector<int> stack;
  std::vector<std::pair<int, std::size_t>> call;  // (node, next edge)
  int counter = 0;
  int components = 0;

  for (int root = 0; root < n; ++root) {
    if (index[root] >= 0) continue;
    call.emplace_back(root, 0);
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      auto& [v, next] = call.back();
      const auto& edges = g[static_cast<std::size_t>(v)];
      bool descended = false;
      while (next < edges.size()) {
        const WeightedEdge& e = edges[next++];
        if (e.weight > max_weight) continue;
        if (index[e.to] < 0) {
          index[e.to] = low[e.to] = counter++;
          stack.push_back(e.to);
          on_stack[e.to] = 1;
          call.emplace_back(e.to, 0);
          descended = true;
          break;
        }
        if (on_stack[e.to]) low[v] = std::min(low[v], index[e.to]);
      }
      if (descended) continue;
      const int done = v;
      if (low[done] == index[done]) {
        while (true) {
          const int w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp[w] = components;
          if (w == done) break;
        }
        ++components;
      }
      call.pop_back();
      if (!call.empty()) {
        const int parent = call.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
    }
  }
  return comp;
}

bool has_cycle_through_weight(const WeightedGraph& g, int weight) {
  const auto comp = strongly_connected_components(g, weight);
  for (std::size_t v = 0; v < g.size(); ++v) {
    for (const auto& e : g[v]) {
      if (e.weight == weight && comp[v] == comp[static_cast<std::size_t>(e.to)]) return true;
    }
  }
  return false;
}

}  // namespace parcomp
