#include "fairdiv/matching.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>

namespace fairdiv {

namespace {

/// Graph re-indexed to local agent ids [0, A) and item ids [0, I).
struct LocalGraph {
  int agent_count = 0;
  int item_count = 0;
  /// adjacency[a] = (local item, weight), in the order edges were given.
  std::vector<std::vector<std::pair<int, Rational>>> adjacency;
  std::vector<std::pair<int, int>> edge_ends;  // per input edge
  std::vector<Agent> agents;                   // sorted ids
  std::vector<Item> items;
};

template <class T>
std::vector<T> sorted_unique(std::vector<T> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

int index_in(const std::vector<int>& sorted, int id) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), id);
  if (it == sorted.end() || *it != id) return -1;
  return static_cast<int>(it - sorted.begin());
}

LocalGraph localize(const RoundGraph& graph) {
  LocalGraph local;
  local.agents = sorted_unique(graph.agents);
  local.items = sorted_unique(graph.items);
  local.agent_count = static_cast<int>(local.agents.size());
  local.item_count = static_cast<int>(local.items.size());
  local.adjacency.resize(local.agent_count);
  for (const auto& e : graph.edges) {
    const int a = index_in(local.agents, e.agent);
    const int g = index_in(local.items, e.item);
    if (a < 0 || g < 0) {
      throw std::invalid_argument("edge (" + std::to_string(e.agent) + ", " +
                                  std::to_string(e.item) + ") references a node not in the graph");
    }
    local.adjacency[a].emplace_back(g, e.weight);
    local.edge_ends.emplace_back(a, g);
  }
  return local;
}

struct LocalMatching {
  std::vector<int> item_of_agent;
  int size = 0;
  Rational weight = 0;
};

/// Successive maximum-gain augmenting paths: after k augmentations the
/// matching has maximum weight among matchings of size k, and augmenting
/// stops at maximum cardinality.
LocalMatching solve(const LocalGraph& g, const std::vector<bool>& agent_blocked,
                    const std::vector<bool>& item_blocked) {
  const int A = g.agent_count;
  const int I = g.item_count;
  LocalMatching out{std::vector<int>(A, -1), 0, 0};
  std::vector<int> agent_of_item(I, -1);

  for (;;) {
    std::vector<std::optional<Rational>> agent_gain(A);
    std::vector<std::optional<Rational>> item_gain(I);
    std::vector<int> item_prev(I, -1);
    for (int a = 0; a < A; ++a) {
      if (!agent_blocked[a] && out.item_of_agent[a] < 0) agent_gain[a] = Rational(0);
    }
    for (int round = 0; round <= A + I; ++round) {
      bool changed = false;
      for (int a = 0; a < A; ++a) {
        if (!agent_gain[a]) continue;
        for (const auto& [it, w] : g.adjacency[a]) {
          if (item_blocked[it] || out.item_of_agent[a] == it) continue;
          const Rational cand = *agent_gain[a] + w;
          if (!item_gain[it] || cand > *item_gain[it]) {
            item_gain[it] = cand;
            item_prev[it] = a;
            changed = true;
          }
        }
      }
      for (int it = 0; it < I; ++it) {
        const int a = agent_of_item[it];
        if (a < 0 || !item_gain[it]) continue;
        Rational w = 0;
        for (const auto& [jt, wt] : g.adjacency[a]) {
          if (jt == it) {
            w = wt;
            break;
          }
        }
        const Rational cand = *item_gain[it] - w;
        if (!agent_gain[a] || cand > *agent_gain[a]) {
          agent_gain[a] = cand;
          changed = true;
        }
      }
      if (!changed) break;
    }
    int target = -1;
    for (int it = 0; it < I; ++it) {
      if (item_blocked[it] || agent_of_item[it] >= 0 || !item_gain[it]) continue;
      if (target < 0 || *item_gain[it] > *item_gain[target]) target = it;
    }
    if (target < 0) break;
    out.weight += *item_gain[target];
    ++out.size;
    for (int it = target; it >= 0;) {
      const int a = item_prev[it];
      const int previous = out.item_of_agent[a];
      out.item_of_agent[a] = it;
      agent_of_item[it] = a;
      it = previous;
    }
  }
  return out;
}

Rational edge_weight(const LocalGraph& g, int a, int it) {
  for (const auto& [jt, w] : g.adjacency[a]) {
    if (jt == it) return w;
  }
  return 0;
}

Matching to_global(const LocalGraph& g, const std::vector<std::pair<int, int>>& local_pairs,
                   Rational weight) {
  Matching m;
  for (auto [a, it] : local_pairs) m.pairs.emplace_back(g.agents[a], g.items[it]);
  std::sort(m.pairs.begin(), m.pairs.end());
  m.weight = weight;
  return m;
}

}  // namespace

Matching max_cardinality_max_weight_matching(const RoundGraph& graph) {
  const LocalGraph g = localize(graph);
  std::vector<bool> agent_blocked(g.agent_count, false);
  std::vector<bool> item_blocked(g.item_count, false);
  const LocalMatching best = solve(g, agent_blocked, item_blocked);

  // Greedy lexicographic pass: accept each edge (in (agent, item) order) if
  // some optimal matching contains it together with everything accepted.
  // Local indices are assigned in sorted id order, so local order is global order.
  std::vector<std::pair<int, int>> candidates = g.edge_ends;
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  std::vector<std::pair<int, int>> fixed;
  Rational fixed_weight = 0;
  for (auto [a, it] : candidates) {
    if (static_cast<int>(fixed.size()) == best.size) break;
    if (agent_blocked[a] || item_blocked[it]) continue;
    agent_blocked[a] = true;
    item_blocked[it] = true;
    const Rational w = edge_weight(g, a, it);
    const LocalMatching rest = solve(g, agent_blocked, item_blocked);
    if (rest.size + static_cast<int>(fixed.size()) + 1 == best.size &&
        rest.weight + fixed_weight + w == best.weight) {
      fixed.emplace_back(a, it);
      fixed_weight += w;
    } else {
      agent_blocked[a] = false;
      item_blocked[it] = false;
    }
  }
  return to_global(g, fixed, fixed_weight);
}

Matching brute_force_matching_oracle(const RoundGraph& graph) {
  if (graph.edges.size() > kBruteForceMatchingEdges) {
    throw std::invalid_argument("brute-force matching is limited to " +
                                std::to_string(kBruteForceMatchingEdges) + " edges, got " +
                                std::to_string(graph.edges.size()));
  }
  std::vector<RoundEdge> edges = graph.edges;
  std::sort(edges.begin(), edges.end(), [](const RoundEdge& x, const RoundEdge& y) {
    return std::pair(x.agent, x.item) < std::pair(y.agent, y.item);
  });
  const std::vector<Agent> agents = sorted_unique(graph.agents);

  Matching best;
  Matching current;
  std::map<Item, bool> used;
  auto better = [](const Matching& x, const Matching& y) {
    if (x.size() != y.size()) return x.size() > y.size();
    if (x.weight != y.weight) return x.weight > y.weight;
    return x.pairs < y.pairs;
  };
  // Agents in increasing order, so pairs are appended already sorted.
  auto recurse = [&](auto&& self, std::size_t index) -> void {
    if (index == agents.size()) {
      if (better(current, best)) best = current;
      return;
    }
    const Agent a = agents[index];
    for (const auto& e : edges) {
      if (e.agent != a || used[e.item]) continue;
      used[e.item] = true;
      current.pairs.emplace_back(a, e.item);
      current.weight += e.weight;
      self(self, index + 1);
      current.weight -= e.weight;
      current.pairs.pop_back();
      used[e.item] = false;
    }
    self(self, index + 1);
  };
  recurse(recurse, 0);
  return best;
}

std::vector<Component> connected_components(const RoundGraph& graph) {
  const std::vector<Agent> agents = sorted_unique(graph.agents);
  const std::vector<Item> items = sorted_unique(graph.items);
  const int A = static_cast<int>(agents.size());
  const int total = A + static_cast<int>(items.size());

  std::vector<int> parent(total);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto index_of = [](const std::vector<int>& sorted, int id) {
    const int at = index_in(sorted, id);
    if (at < 0) throw std::invalid_argument("edge references unknown node");
    return at;
  };
  for (const auto& e : graph.edges) {
    const int u = find(index_of(agents, e.agent));
    const int v = find(A + index_of(items, e.item));
    if (u != v) parent[std::max(u, v)] = std::min(u, v);
  }

  std::map<int, Component> by_root;
  for (int x = 0; x < total; ++x) {
    auto& c = by_root[find(x)];
    if (x < A) {
      c.agents.push_back(agents[x]);
    } else {
      c.items.push_back(items[x - A]);
    }
  }
  // Roots are the smallest member index, so agent components come first in
  // order of their smallest agent.
  std::vector<Component> out;
  out.reserve(by_root.size());
  for (auto& [root, c] : by_root) out.push_back(std::move(c));
  return out;
}

}  // namespace fairdiv
