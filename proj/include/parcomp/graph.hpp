#pragma once

#include <vector>

namespace parcomp {

/// Edge of an explicit graph carrying a weight (a priority, or 1/2 for
/// non-accepting/accepting) and the letter it reads.
struct WeightedEdge {
  int to;
  int weight;
  int letter;
};

using WeightedGraph = std::vector<std::vector<WeightedEdge>>;

/// Strongly connected components of the subgraph that keeps edges with
/// weight <= max_weight. Returns a component id per node. Iterative Tarjan.
std::vector<int> strongly_connected_components(const WeightedGraph& g, int max_weight);

/// True iff some edge of weight exactly `weight` lies on a cycle that only
/// uses edges of weight <= `weight`.
bool has_cycle_through_weight(const WeightedGraph& g, int weight);

}  // namespace parcomp
