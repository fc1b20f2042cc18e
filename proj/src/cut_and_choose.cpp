#include <algorithm>
#include <sstream>

#include "fairdiv/algorithms.hpp"
#include "fairdiv/error.hpp"

namespace fairdiv {

bool is_binary_valued(const Valuation& v) {
  if (v.kind() == ValuationKind::kBinaryTable) return true;
  if (const auto* t = v.get_if<ExplicitTable>()) {
    return std::all_of(t->table.begin(), t->table.end(),
                       [](const Rational& q) { return q == 0 || q == 1; });
  }
  return false;
}

Allocation round_robin_allocation(int n, int m) {
  Allocation x{std::vector<Bundle>(n)};
  for (Item g = 0; g < m; ++g) x.bundles[g % n].insert(g);
  return x;
}

namespace {

void require_binary(const Instance& inst) {
  for (Agent i = 0; i < inst.agent_count(); ++i) {
    if (!is_binary_valued(inst.valuation(i))) {
      throw UnsupportedValuation("cut-and-choose needs binary-valued valuations; agent " +
                                 std::to_string(i) + " has a " +
                                 std::string(to_string(inst.valuation(i).kind())) + " valuation");
    }
  }
}

bool pmms_holds_for(const Instance& inst, const Allocation& x, Agent i, FairShareCache& cache) {
  const Rational own = inst.value(i, x[i]);
  for (Agent j = 0; j < inst.agent_count(); ++j) {
    if (j != i && own < cache.pairwise(i, x[i] | x[j])) return false;
  }
  return true;
}

int total_value(const Instance& inst, const Allocation& x) {
  Rational w = 0;
  for (Agent i = 0; i < inst.agent_count(); ++i) w += inst.value(i, x[i]);
  return static_cast<int>(floor(w));
}

}  // namespace

std::vector<Agent> build_cut_and_choose_graph(const Instance& inst, const Allocation& x, Agent s,
                                              FairShareCache& cache) {
  require_binary(inst);
  const int n = inst.agent_count();
  std::vector<Agent> pi(n, s);
  for (Agent i = 0; i < n; ++i) {
    const Rational held = inst.value(i, x[s]);
    for (Agent j = 0; j < n; ++j) {
      if (j == s) continue;
      if (held < cache.pairwise(i, x[s] | x[j])) {
        pi[i] = j;
        break;
      }
    }
  }
  return pi;
}

std::vector<Agent> build_cut_and_choose_graph(const Instance& inst, const Allocation& x,
                                              Agent s) {
  FairShareCache cache(inst);
  return build_cut_and_choose_graph(inst, x, s, cache);
}

CcgResult cut_and_choose_graph_procedure(const Instance& inst, std::optional<Allocation> initial) {
  require_binary(inst);
  const int n = inst.agent_count();
  const int m = inst.item_count();
  Allocation x = initial ? std::move(*initial) : round_robin_allocation(n, m);
  if (auto bad = validate_allocation(inst, x)) throw std::invalid_argument(bad->message);

  FairShareCache cache(inst);
  auto potential = [&](const Allocation& y) {
    int satisfied = 0;
    for (Agent i = 0; i < n; ++i) satisfied += pmms_holds_for(inst, y, i, cache) ? 1 : 0;
    return std::pair(total_value(inst, y), satisfied);
  };

  CcgTrace trace;
  std::tie(trace.initial_W, trace.initial_E) = potential(x);
  for (;;) {
    Agent s = -1;
    for (Agent i = 0; i < n && s < 0; ++i) {
      if (!pmms_holds_for(inst, x, i, cache)) s = i;
    }
    if (s < 0) break;
    if (static_cast<int>(trace.iterations.size()) >= n * n) {
      throw NonTermination("cut-and-choose did not reach PMMS within n^2 = " +
                           std::to_string(n * n) +
                           " iterations; the valuations are not MMS-feasible");
    }

    CcgIteration it;
    it.s = s;
    it.pi = build_cut_and_choose_graph(inst, x, s, cache);
    it.walk.push_back(s);
    while (std::find(it.walk.begin(), it.walk.end(), it.pi[it.walk.back()]) == it.walk.end()) {
      it.walk.push_back(it.pi[it.walk.back()]);
    }
    const auto& walk = it.walk;
    const int k = static_cast<int>(walk.size()) - 1;
    const Agent closing = it.pi[walk[k]];

    Allocation next = x;
    if (closing == walk[0]) {
      it.walk_case = WalkCase::kCycle;
      for (Agent i : walk) next.bundles[i] = x[it.pi[i]];
    } else {
      it.walk_case = WalkCase::kLollipop;
      const int w = static_cast<int>(std::find(walk.begin(), walk.end(), closing) - walk.begin());
      const Agent cutter = walk[k];
      const Agent chooser = walk[w - 1];
      auto split = mu(inst.valuation(cutter), x[walk[0]] | x[walk[w]], 2).witness;
      Bundle a = split[0];
      Bundle b = split[1];
      if (inst.value(chooser, a) < inst.value(chooser, b)) {
        std::swap(a, b);
        it.swap_applied = true;
      }
      it.chooser = chooser;
      it.chooser_value = inst.value(chooser, a);
      it.chooser_other_value = inst.value(chooser, b);
      it.chooser_share = cache.pairwise(chooser, a | b);
      for (int h = 0; h <= w - 2; ++h) next.bundles[walk[h]] = x[it.pi[walk[h]]];
      for (int h = w; h <= k - 1; ++h) next.bundles[walk[h]] = x[it.pi[walk[h]]];
      next.bundles[chooser] = a;
      next.bundles[cutter] = b;
    }
    x = std::move(next);
    std::tie(it.W, it.E) = potential(x);
    trace.iterations.push_back(std::move(it));
  }
  return {std::move(x), std::move(trace)};
}

std::string format_trace(const CcgTrace& trace) {
  std::ostringstream out;
  out << "cut-and-choose W=" << trace.initial_W << " E=" << trace.initial_E << "\n";
  int index = 0;
  for (const auto& it : trace.iterations) {
    out << "iter " << ++index << " | s " << it.s << " | pi";
    for (Agent j : it.pi) out << ' ' << j;
    out << " | walk";
    for (Agent j : it.walk) out << ' ' << j;
    out << " | case " << (it.walk_case == WalkCase::kCycle ? "cycle" : "lollipop")
        << " | swap " << (it.swap_applied ? 1 : 0) << " | W " << it.W << " | E " << it.E << "\n";
  }
  out << "end iterations=" << trace.iterations.size() << "\n";
  return out.str();
}

}  // namespace fairdiv
