#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "fairdiv/matching.hpp"
#include "support/random_graphs.hpp"

using namespace fairdiv;
using Pairs = std::vector<std::pair<Agent, Item>>;

TEST_CASE("higher ratio wins a contested item") {
  const RoundGraph g{{0, 1}, {7}, {{0, 7, Rational(3)}, {1, 7, Rational(5)}}};
  const auto m = max_cardinality_max_weight_matching(g);
  CHECK(m.pairs == Pairs{{1, 7}});
  CHECK(m.weight == 5);
}

TEST_CASE("cardinality dominates weight") {
  const RoundGraph g{{0, 1}, {0, 1}, {{0, 0, Rational(1)}, {0, 1, Rational(1)}, {1, 0, Rational(1)}}};
  CHECK(max_cardinality_max_weight_matching(g).pairs == Pairs{{0, 1}, {1, 0}});

  // A heavy single edge loses to two light ones.
  const RoundGraph h{{0, 1}, {0, 1}, {{0, 0, Rational(100)}, {0, 1, Rational(1)}, {1, 0, Rational(1)}}};
  const auto m = max_cardinality_max_weight_matching(h);
  CHECK(m.size() == 2);
  CHECK(m.weight == 2);
}

TEST_CASE("ties go to the lexicographically smallest pair list") {
  const RoundGraph g{{0, 1}, {0, 1}, {{0, 0, Rational(2)}, {0, 1, Rational(2)}, {1, 0, Rational(2)}, {1, 1, Rational(2)}}};
  CHECK(max_cardinality_max_weight_matching(g).pairs == Pairs{{0, 0}, {1, 1}});
}

TEST_CASE("first round of the four-agent example") {
  // Agents 0, 1 want item 0 (x) with ratios 5/2 and 3; agents 2, 3 want item 1 (y) with 4 and 5.
  RoundGraph g{{0, 1, 2, 3}, {}, {{0, 0, Rational(5, 2)}, {1, 0, Rational(3)}, {2, 1, Rational(4)}, {3, 1, Rational(5)}}};
  for (Item it = 0; it < 18; ++it) g.items.push_back(it);
  CHECK(max_cardinality_max_weight_matching(g).pairs == Pairs{{1, 0}, {3, 1}});

  const auto comps = connected_components(g);
  REQUIRE(comps.size() >= 2);
  CHECK(comps[0].agents == std::vector<Agent>{0, 1});
  CHECK(comps[0].items == std::vector<Item>{0});
  CHECK(comps[1].agents == std::vector<Agent>{2, 3});
  CHECK(comps[1].items == std::vector<Item>{1});
  CHECK(comps.size() == 2 + 16);
}

TEST_CASE("connected components") {
  const RoundGraph empty{{4, 2}, {1, 0}, {}};
  const auto c = connected_components(empty);
  REQUIRE(c.size() == 4);
  CHECK(c[0].agents == std::vector<Agent>{2});
  CHECK(c[1].agents == std::vector<Agent>{4});
  CHECK(c[2].items == std::vector<Item>{0});
  CHECK(c[3].items == std::vector<Item>{1});

  const RoundGraph path{{0, 1}, {5}, {{0, 5, Rational(1)}, {1, 5, Rational(1)}}};
  const auto p = connected_components(path);
  REQUIRE(p.size() == 1);
  CHECK(p[0].agents == std::vector<Agent>{0, 1});
  CHECK(p[0].items == std::vector<Item>{5});
}

TEST_CASE("brute-force oracle basics") {
  CHECK(brute_force_matching_oracle(RoundGraph{}).pairs.empty());
  const RoundGraph one{{3}, {4}, {{3, 4, Rational(7, 2)}}};
  const auto m = brute_force_matching_oracle(one);
  CHECK(m.pairs == Pairs{{3, 4}});
  CHECK(m.weight == Rational(7, 2));

  RoundGraph big{{0}, {}, {}};
  for (Item it = 0; it < 21; ++it) {
    big.items.push_back(it);
    big.edges.push_back({0, it, Rational(1)});
  }
  CHECK_THROWS_AS(brute_force_matching_oracle(big), std::invalid_argument);
}

TEST_CASE("edges must reference listed nodes") {
  const RoundGraph bad{{0}, {0}, {{1, 0, Rational(1)}}};
  CHECK_THROWS_AS(max_cardinality_max_weight_matching(bad), std::invalid_argument);
  CHECK_THROWS_AS(connected_components(bad), std::invalid_argument);
}

TEST_CASE("production matcher equals the brute-force oracle") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    const auto g = testing::random_round_graph(rng, 20, trial % 2 == 0);
    const auto fast = max_cardinality_max_weight_matching(g);
    const auto slow = brute_force_matching_oracle(g);
    CHECK(testing::check_matching_valid(g, fast).empty());
    CHECK(fast.size() == slow.size());
    CHECK(fast.weight == slow.weight);
    CHECK(fast.pairs == slow.pairs);
  }
}

TEST_CASE("uniform-weight components: unmatched ratios never exceed matched ones") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const auto g = testing::random_round_graph(rng, 20, true);
    const auto m = max_cardinality_max_weight_matching(g);
    std::map<Agent, Rational> weight;
    for (const auto& e : g.edges) weight[e.agent] = e.weight;
    std::set<Agent> matched;
    for (auto [i, it] : m.pairs) matched.insert(i);
    for (const auto& comp : connected_components(g)) {
      Rational hi = -1;
      Rational lo = 1000;
      bool has_unmatched = false;
      bool has_matched = false;
      for (Agent i : comp.agents) {
        if (!weight.count(i)) continue;
        if (matched.count(i)) {
          has_matched = true;
          lo = std::min(lo, weight[i]);
        } else {
          has_unmatched = true;
          hi = std::max(hi, weight[i]);
        }
      }
      if (has_matched && has_unmatched) CHECK(hi <= lo);
    }
  }
}

TEST_CASE("alternating-path reachable agents: unmatched ratios never exceed matched ones") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const auto g = testing::random_round_graph(rng, 20, true);
    const auto m = max_cardinality_max_weight_matching(g);
    std::map<Agent, Rational> weight;
    for (const auto& e : g.edges) weight[e.agent] = e.weight;
    std::map<Item, Agent> owner;
    std::set<Agent> matched;
    for (auto [i, it] : m.pairs) {
      owner[it] = i;
      matched.insert(i);
    }
    for (const auto& [u, wu] : weight) {
      if (matched.count(u)) continue;
      // Agents reachable from u by non-matching then matching edges.
      std::set<Agent> seen{u};
      std::vector<Agent> stack{u};
      while (!stack.empty()) {
        const Agent i = stack.back();
        stack.pop_back();
        for (const auto& e : g.edges) {
          if (e.agent != i || !owner.count(e.item)) continue;
          const Agent j = owner[e.item];
          if (j == i || !seen.insert(j).second) continue;
          CHECK(wu <= weight[j]);
          stack.push_back(j);
        }
      }
    }
  }
}

TEST_CASE("a component can hold an unmatched agent above a matched one") {
  // Agents 0 and 1 (ratio 5) only want item 0; agent 2 (ratio 2) wants items 0 and 1.
  const RoundGraph g{{0, 1, 2}, {0, 1},
                     {{0, 0, Rational(5)}, {1, 0, Rational(5)}, {2, 0, Rational(2)}, {2, 1, Rational(2)}}};
  const auto m = max_cardinality_max_weight_matching(g);
  CHECK(m.pairs == Pairs{{0, 0}, {2, 1}});
  CHECK(connected_components(g).size() == 1);
  CHECK(brute_force_matching_oracle(g) == m);
}
