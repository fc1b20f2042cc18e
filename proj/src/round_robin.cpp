#include <algorithm>

#include "fairdiv/algorithms.hpp"
#include "fairdiv/error.hpp"

namespace fairdiv {

RrrResult reversed_round_robin(const Instance& inst, Agent leftover_owner) {
  const int n = inst.agent_count();
  const int m = inst.item_count();
  if (leftover_owner < 0 || leftover_owner >= n) {
    throw std::invalid_argument("leftover owner " + std::to_string(leftover_owner) +
                                " is not an agent");
  }
  // Pad with items every agent values at 0 so both picking passes succeed.
  const int padded = std::max(m, 2 * n);
  std::vector<std::vector<Rational>> values(n);
  for (Agent i = 0; i < n; ++i) {
    const auto* pd = inst.valuation(i).get_if<PairDemand>();
    if (pd == nullptr) {
      throw UnsupportedValuation("reversed round-robin needs pair-demand valuations; agent " +
                                 std::to_string(i) + " has a " +
                                 std::string(to_string(inst.valuation(i).kind())) + " valuation");
    }
    values[i] = pd->values;
    values[i].resize(padded, Rational(0));
  }

  std::vector<bool> taken(padded, false);
  auto pick = [&](Agent i) {
    Item best = -1;
    for (Item g = 0; g < padded; ++g) {
      if (!taken[g] && (best < 0 || values[i][g] > values[i][best])) best = g;
    }
    taken[best] = true;
    return best;
  };

  RrrResult result;
  result.padded_item_count = padded;
  result.first_picks.resize(n);
  result.second_picks.resize(n);
  for (Agent i = 0; i < n; ++i) result.first_picks[i] = pick(i);
  for (Agent i = n - 1; i >= 0; --i) result.second_picks[i] = pick(i);

  result.allocation.bundles.assign(n, Bundle{});
  for (Agent i = 0; i < n; ++i) {
    for (Item g : {result.first_picks[i], result.second_picks[i]}) {
      if (g < m) result.allocation.bundles[i].insert(g);
    }
  }
  for (Item g = 0; g < m; ++g) {
    if (!taken[g]) result.allocation.bundles[leftover_owner].insert(g);
  }
  return result;
}

PairDemandShare lemma_pair_demand_mu(const std::array<Rational, 4>& sorted_values) {
  if (!std::is_sorted(sorted_values.begin(), sorted_values.end())) {
    throw std::invalid_argument("lemma_pair_demand_mu expects values sorted ascending");
  }
  const auto v = Valuation::pair_demand({sorted_values.begin(), sorted_values.end()});
  const Rational ad = v.value(Bundle::of({0, 3}));
  const Rational bc = v.value(Bundle::of({1, 2}));
  PairDemandShare out;
  out.closed_form = std::min(ad, bc);
  out.brute_force = mu(v, Bundle::full(4), 2).mu;
  out.agrees = out.closed_form == out.brute_force;
  return out;
}

}  // namespace fairdiv
