#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <functional>
#include <random>

#include "fairdiv/error.hpp"
#include "fairdiv/instances.hpp"
#include "fairdiv/oracles.hpp"

using namespace fairdiv;

namespace {

std::vector<Rational> ints(std::initializer_list<int> xs) {
  std::vector<Rational> out;
  for (int x : xs) out.emplace_back(x);
  return out;
}

Instance identical_additive(int n, const std::vector<Rational>& values) {
  return Instance(n, static_cast<int>(values.size()),
                  std::vector<Valuation>(n, Valuation::additive(values)));
}

// Recursive k-way split, written independently of the odometer in mu().
Rational slow_mu(const Valuation& v, Bundle s, int k) {
  const auto items = s.items();
  std::vector<Bundle> parts(k);
  Rational best = -1;
  std::function<void(std::size_t)> rec = [&](std::size_t pos) {
    if (pos == items.size()) {
      Rational lo = v.value(parts[0]);
      for (const auto& p : parts) lo = std::min(lo, v.value(p));
      best = std::max(best, lo);
      return;
    }
    for (auto& p : parts) {
      p.insert(items[pos]);
      rec(pos + 1);
      p.erase(items[pos]);
    }
  };
  rec(0);
  return best;
}

Instance random_additive(std::mt19937_64& rng, int n, int m, int max_value) {
  std::uniform_int_distribution<int> val(0, max_value);
  std::vector<Valuation> vals;
  for (int i = 0; i < n; ++i) {
    std::vector<Rational> values;
    for (int g = 0; g < m; ++g) values.emplace_back(val(rng));
    vals.push_back(Valuation::additive(values));
  }
  return Instance(n, m, vals);
}

Allocation random_allocation(std::mt19937_64& rng, int n, int m) {
  std::vector<Agent> owners(m);
  for (auto& o : owners) o = static_cast<Agent>(rng() % n);
  return allocation_from_owners(n, owners);
}

}  // namespace

TEST_CASE("mu examples") {
  const auto v = Valuation::additive(ints({1, 2, 3, 4}));
  const auto r = mu(v, Bundle::full(4), 2);
  CHECK(r.mu == slow_mu(v, Bundle::full(4), 2));
  CHECK(r.mu == 5);

  const auto empty = mu(v, Bundle{}, 3);
  CHECK(empty.mu == 0);
  REQUIRE(empty.witness.size() == 3);
  for (Bundle b : empty.witness) CHECK(b.empty());

  const auto sep = gen_separation3();
  // Subset-sum over 101..106: the best split of 621 is 310 / 311.
  Rational best = 0;
  for (std::uint64_t mask = 0; mask < 64; ++mask) {
    Rational side = 0;
    for (int g = 0; g < 6; ++g) {
      if ((mask >> g) & 1U) side += 101 + g;
    }
    best = std::max(best, std::min(side, Rational(621) - side));
  }
  CHECK(mu(sep.valuation(2), Bundle::full(6), 2).mu == best);
  CHECK(best == 310);

  const auto stars = gen_nonexistence_stars(3);
  for (Agent i = 0; i < 3; ++i) CHECK(mu(stars.valuation(i), Bundle::full(5), 3).mu == 2);
}

TEST_CASE("mu witness is a partition achieving mu") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = 1 + trial % 7;
    const int k = 1 + trial % 3;
    const auto inst = random_additive(rng, 1, m, 9);
    const Bundle s(rng() & Bundle::full(m).mask());
    const auto r = mu(inst.valuation(0), s, k);
    REQUIRE(static_cast<int>(r.witness.size()) == k);
    Bundle seen;
    Rational lo = inst.value(0, r.witness[0]);
    for (Bundle b : r.witness) {
      CHECK(b.disjoint(seen));
      seen = seen | b;
      lo = std::min(lo, inst.value(0, b));
    }
    CHECK(seen == s);
    CHECK(lo == r.mu);
    CHECK(r.mu == slow_mu(inst.valuation(0), s, k));
  }
}

TEST_CASE("mu is non-increasing in k for monotone valuations") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 60; ++trial) {
    const int m = 2 + trial % 6;
    const auto inst = random_additive(rng, 1, m, 12);
    const auto pd = Valuation::pair_demand(inst.valuation(0).get_if<Additive>()->values);
    for (const auto& v : {inst.valuation(0), pd}) {
      for (int k = 1; k < 4; ++k) CHECK(mu(v, Bundle::full(m), k + 1).mu <= mu(v, Bundle::full(m), k).mu);
    }
  }
}

TEST_CASE("enumeration budget") {
  const auto v = Valuation::additive(std::vector<Rational>(20, Rational(1)));
  CHECK_THROWS_AS(mu(v, Bundle::full(20), 3, EnumerationBudget{1000}), BudgetExceeded);
  CHECK(saturating_pow(2, 10) == 1024);
  CHECK(saturating_pow(10, 40) == UINT64_MAX);

  ::setenv("FAIRDIV_BUDGET", "12345", 1);
  CHECK(EnumerationBudget::from_env().max_evaluations == 12345);
  ::unsetenv("FAIRDIV_BUDGET");
  CHECK(EnumerationBudget::from_env().max_evaluations == 100'000'000);
}

TEST_CASE("check_efx") {
  const auto ex = gen_pmms_not_efx_example();
  const Allocation x{{Bundle::of({0}), Bundle::of({1, 2})}};
  const auto r = check_efx(ex, x);
  CHECK_FALSE(r.holds);
  REQUIRE(r.violations.size() == 1);
  CHECK(r.violations[0].envier == 0);
  CHECK(r.violations[0].envied == 1);
  REQUIRE(r.violations[0].item);
  CHECK(*r.violations[0].item == 1);

  const Instance single(1, 3, {Valuation::additive(ints({1, 2, 3}))});
  CHECK(check_efx(single, Allocation{{Bundle::full(3)}}).holds);

  const auto mnw = gen_mnw_counterexample();
  const auto bad = check_efx(mnw, Allocation{{Bundle::of({0}), Bundle::of({1, 2, 3})}});
  CHECK_FALSE(bad.holds);
  CHECK(bad.violations[0].envier == 0);
}

TEST_CASE("check_efx_positive") {
  const auto ex = gen_pmms_not_efx_example();
  CHECK(check_efx_positive(ex, Allocation{{Bundle::of({0}), Bundle::of({1, 2})}}).holds);

  const auto two = identical_additive(2, ints({1, 1}));
  CHECK(check_efx_positive(two, Allocation{{Bundle::of({0}), Bundle::of({1})}}).holds);

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    auto inst = random_additive(rng, 3, 5, 5);
    std::vector<Valuation> positive;
    for (const auto& v : inst.valuations()) {
      auto values = v.get_if<Additive>()->values;
      for (auto& q : values) q += 1;
      positive.push_back(Valuation::additive(values));
    }
    const Instance pos(3, 5, positive);
    const auto x = random_allocation(rng, 3, 5);
    const auto a = check_efx(pos, x);
    const auto b = check_efx_positive(pos, x);
    CHECK(a.holds == b.holds);
    REQUIRE(a.violations.size() == b.violations.size());
    for (std::size_t k = 0; k < a.violations.size(); ++k) {
      CHECK(a.violations[k].envier == b.violations[k].envier);
      CHECK(a.violations[k].envied == b.violations[k].envied);
      CHECK(a.violations[k].item == b.violations[k].item);
    }
  }

  const Instance pd(1, 2, {Valuation::pair_demand(ints({1, 1}))});
  CHECK_THROWS_AS(check_efx_positive(pd, Allocation{{Bundle::full(2)}}), UnsupportedValuation);
}

TEST_CASE("check_pmms") {
  const auto ex = gen_pmms_not_efx_example();
  CHECK(check_pmms(ex, Allocation{{Bundle::of({0}), Bundle::of({1, 2})}}).holds);

  const auto two = identical_additive(2, ints({1, 1}));
  const auto r = check_pmms(two, Allocation{{Bundle::full(2), Bundle{}}});
  CHECK_FALSE(r.holds);
  REQUIRE(r.violations.size() == 1);
  CHECK(r.violations[0].envier == 1);
  CHECK(r.violations[0].threshold == 1);
  CHECK(r.violations[0].partition.size() == 2);

  const auto sep = gen_separation3();
  const auto balanced = balanced_allocations(3, 6);
  CHECK(balanced.size() == 90);
  FairShareCache cache(sep);
  for (const auto& x : balanced) CHECK_FALSE(check_pmms(sep, x, cache).holds);
}

TEST_CASE("check_mms") {
  for (int n : {3, 4}) {
    const auto inst = gen_nonexistence_stars(n);
    CHECK(check_mms(inst, stars_mms_allocation(n)).holds);
  }
  const Instance single(1, 2, {Valuation::additive(ints({1, 1}))});
  CHECK(check_mms(single, Allocation{{Bundle::full(2)}}).holds);
  const auto two = identical_additive(2, ints({1, 1}));
  CHECK(check_mms(two, Allocation{{Bundle::of({0}), Bundle::of({1})}}).holds);
  const auto r = check_mms(two, Allocation{{Bundle::of({0, 1}), Bundle{}}});
  CHECK_FALSE(r.holds);
  CHECK(r.violations[0].envied == -1);
}

TEST_CASE("check_mms_feasible") {
  CHECK(check_mms_feasible(Valuation::additive(ints({3, 1, 4, 1, 5}))));
  // v(S) = 1 iff S contains {0,1} or {2,3}.
  std::vector<bool> ones(16, false);
  for (std::uint64_t s = 0; s < 16; ++s) ones[s] = (s & 0b0011U) == 0b0011U || (s & 0b1100U) == 0b1100U;
  const auto v = Valuation::binary_table(4, ones);
  CHECK(mu(v, Bundle::full(4), 2).mu == 1);
  CHECK(std::max(v.value(Bundle::of({0, 2})), v.value(Bundle::of({1, 3}))) == 0);
  CHECK_FALSE(check_mms_feasible(v));
  CHECK(check_mms_feasible(Valuation::binary_table(4, std::vector<bool>(16, false))));
}

TEST_CASE("additive, bivalued and pair-demand valuations are MMS-feasible on small item sets") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> val(0, 9);
  for (int trial = 0; trial < 150; ++trial) {
    const int m = 1 + trial % 4;
    std::vector<Rational> values;
    for (int g = 0; g < m; ++g) values.emplace_back(val(rng));
    CHECK(check_mms_feasible(Valuation::additive(values)));
    CHECK(check_mms_feasible(Valuation::pair_demand(values)));
    CHECK(check_mms_feasible(
        Valuation::personalized_bivalued(m, Rational(val(rng) + 1), Rational(0), Bundle(rng() & ((1U << m) - 1)))));
  }
}

TEST_CASE("nash welfare maximizers") {
  const auto mnw = gen_mnw_counterexample();
  const auto r = nash_welfare_maximizers(mnw);
  CHECK(r.max_nw == 25);
  REQUIRE(r.argmax.size() == 2);
  CHECK(r.argmax[0] == Allocation{{Bundle::of({0}), Bundle::of({1, 2, 3})}});
  CHECK(r.argmax[1] == Allocation{{Bundle::of({1}), Bundle::of({0, 2, 3})}});
  CHECK(r.scanned == 16);

  const Instance single(1, 3, {Valuation::additive(ints({1, 2, 3}))});
  const auto one = nash_welfare_maximizers(single);
  CHECK(one.max_nw == 6);
  REQUIRE(one.argmax.size() == 1);
  CHECK(one.argmax[0][0] == Bundle::full(3));

  // Four allocations of two unit items: products 0, 1, 1, 0.
  const auto two = nash_welfare_maximizers(identical_additive(2, ints({1, 1})));
  CHECK(two.max_nw == 1);
  CHECK(two.argmax.size() == 2);
}

TEST_CASE("exists_fair_allocation") {
  const auto sep = gen_separation3();
  const auto pmms = exists_fair_allocation(sep, FairnessNotion::kPMMS);
  CHECK_FALSE(pmms.found);
  CHECK(pmms.scanned == 729);
  const auto mms = exists_fair_allocation(sep, FairnessNotion::kMMS);
  REQUIRE(mms.found);
  CHECK(check_mms(sep, *mms.found).holds);

  CHECK_FALSE(exists_fair_allocation(gen_nonexistence_stars(2), FairnessNotion::kPMMS).found);

  // First witness in owner-vector order: everything to agent 0 is EFX for [0,0].
  const auto zero = identical_additive(2, ints({0, 0}));
  const auto first = exists_fair_allocation(zero, FairnessNotion::kEFX);
  REQUIRE(first.found);
  CHECK(first.scanned == 1);
}

TEST_CASE("pair compatibility graph") {
  const auto sep = gen_separation3();
  const auto graph = pair_compatibility_graph(sep);
  CHECK(graph.nodes.size() == 45);
  CHECK_FALSE(graph.find_triangle());

  const auto two = identical_additive(2, ints({1, 1, 1, 1}));
  const auto g2 = pair_compatibility_graph(two);
  CHECK_FALSE(g2.find_triangle());
  bool found = false;
  for (auto [p, q] : g2.edges) {
    const auto& a = g2.nodes[p];
    const auto& b = g2.nodes[q];
    if (a.agent == 0 && a.pair == Bundle::of({0, 1}) && b.agent == 1 && b.pair == Bundle::of({2, 3})) found = true;
  }
  CHECK(found);

  // Independent triangle scan over the adjacency matrix.
  std::vector<std::vector<bool>> adj(graph.nodes.size(), std::vector<bool>(graph.nodes.size(), false));
  for (auto [p, q] : graph.edges) adj[p][q] = adj[q][p] = true;
  int triangles = 0;
  for (std::size_t a = 0; a < adj.size(); ++a) {
    for (std::size_t b = a + 1; b < adj.size(); ++b) {
      for (std::size_t c = b + 1; c < adj.size(); ++c) {
        if (adj[a][b] && adj[b][c] && adj[a][c]) ++triangles;
      }
    }
  }
  CHECK(triangles == 0);
}

TEST_CASE("with two agents PMMS and MMS coincide") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 1 + trial % 7;
    const auto inst = random_additive(rng, 2, m, 6);
    const auto x = random_allocation(rng, 2, m);
    CHECK(check_pmms(inst, x).holds == check_mms(inst, x).holds);
  }
}

TEST_CASE("every PMMS allocation is EFX on positively valued goods") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    const int m = 2 + trial % 7;
    const auto inst = random_additive(rng, 2, m, 4);
    FairShareCache cache(inst);
    for_each_assignment(2, m, [&](const std::vector<Agent>& owners) {
      const auto x = allocation_from_owners(2, owners);
      if (check_pmms(inst, x, cache).holds) CHECK(check_efx_positive(inst, x).holds);
      return true;
    });
  }
}

TEST_CASE("binary additive: EFX implies PMMS") {
  GeneratorSpec spec;
  spec.kind = GeneratorKind::kRandomBinaryAdditive;
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 100; ++trial) {
    spec.seed = trial;
    spec.params.n = 2 + trial % 3;
    spec.params.m = 2 + trial % 6;
    const auto inst = sample_random(spec).instance;
    for (int k = 0; k < 20; ++k) {
      const auto x = random_allocation(rng, inst.agent_count(), inst.item_count());
      if (check_efx(inst, x).holds) CHECK(check_pmms(inst, x).holds);
    }
  }
}

TEST_CASE("fairness notion names") {
  CHECK(parse_fairness_notion("efx") == FairnessNotion::kEFX);
  CHECK(parse_fairness_notion("efx+") == FairnessNotion::kEFXPositive);
  CHECK(parse_fairness_notion("pmms") == FairnessNotion::kPMMS);
  CHECK(parse_fairness_notion("mms") == FairnessNotion::kMMS);
  CHECK_FALSE(parse_fairness_notion("ef1"));
  CHECK(to_string(FairnessNotion::kEFXPositive) == "efx+");
}
