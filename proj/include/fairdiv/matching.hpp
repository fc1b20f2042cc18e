#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "fairdiv/bundle.hpp"
#include "fairdiv/rational.hpp"

namespace fairdiv {

struct RoundEdge {
  Agent agent;
  Item item;
  Rational weight;

  bool operator==(const RoundEdge&) const = default;
};

/// Bipartite graph between active agents and remaining items.
struct RoundGraph {
  std::vector<Agent> agents;
  std::vector<Item> items;
  std::vector<RoundEdge> edges;
};

struct Matching {
  /// Sorted by (agent, item).
  std::vector<std::pair<Agent, Item>> pairs;
  Rational weight = 0;

  int size() const { return static_cast<int>(pairs.size()); }
  bool operator==(const Matching&) const = default;
};

/// A maximum-cardinality matching of maximum total weight among those; ties
/// go to the lexicographically smallest sorted pair list.
Matching max_cardinality_max_weight_matching(const RoundGraph& graph);

inline constexpr std::size_t kBruteForceMatchingEdges = 20;

/// Same contract by exhaustive enumeration. Throws std::invalid_argument above
/// kBruteForceMatchingEdges edges.
Matching brute_force_matching_oracle(const RoundGraph& graph);

struct Component {
  std::vector<Agent> agents;
  std::vector<Item> items;
};

/// Connected components over agents and items; isolated nodes are singletons.
/// Components are ordered by their smallest agent, item-only ones last.
std::vector<Component> connected_components(const RoundGraph& graph);

}  // namespace fairdiv
