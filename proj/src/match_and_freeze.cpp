#include <algorithm>
#include <sstream>

#include "fairdiv/algorithms.hpp"
#include "fairdiv/error.hpp"

namespace fairdiv {

namespace {

const PersonalizedBivalued& bivalued(const Instance& inst, Agent i) {
  const auto* pb = inst.valuation(i).get_if<PersonalizedBivalued>();
  if (pb == nullptr) {
    throw UnsupportedValuation("match-and-freeze needs personalized bivalued valuations; agent " +
                               std::to_string(i) + " has a " +
                               std::string(to_string(inst.valuation(i).kind())) + " valuation");
  }
  return *pb;
}

}  // namespace

MafResult match_and_freeze(const Instance& inst) {
  const int n = inst.agent_count();
  const int m = inst.item_count();

  MafTrace trace;
  trace.agent_count = n;
  trace.item_count = m;
  std::vector<const PersonalizedBivalued*> vals;
  Rational max_finite = 0;
  for (Agent i = 0; i < n; ++i) {
    vals.push_back(&bivalued(inst, i));
    if (vals.back()->b > 0) max_finite = std::max(max_finite, vals.back()->a / vals.back()->b);
  }
  trace.big_k = Rational(m) * (1 + max_finite);
  for (const auto* v : vals) trace.ratios.push_back(v->b > 0 ? v->a / v->b : trace.big_k);

  Allocation x{std::vector<Bundle>(n)};
  Bundle pool = Bundle::full(m);
  std::vector<int> frozen_until(n, 0);
  trace.priorities.assign(n, 0);
  trace.last_high_round.assign(n, 0);

  for (int r = 1; !pool.empty(); ++r) {
    MafRound round;
    round.round = r;
    for (Agent i = 0; i < n; ++i) {
      if (r > frozen_until[i]) round.graph.agents.push_back(i);
    }
    round.graph.items = pool.items();
    for (Agent i : round.graph.agents) {
      for (Item g : (pool & vals[i]->high).items()) {
        round.graph.edges.push_back({i, g, trace.ratios[i]});
      }
    }

    round.matching = max_cardinality_max_weight_matching(round.graph);
    std::vector<bool> matched(n, false);
    Bundle handed_out;
    for (auto [i, g] : round.matching.pairs) {
      x.bundles[i].insert(g);
      pool.erase(g);
      handed_out.insert(g);
      matched[i] = true;
    }

    for (const auto& component : connected_components(round.graph)) {
      std::optional<Rational> t;
      for (Agent i : component.agents) {
        if (!matched[i] && (!t || trace.ratios[i] > *t)) t = trace.ratios[i];
      }
      if (!t) continue;
      const int duration =
          static_cast<int>(std::clamp<std::int64_t>(floor(*t - 1), 0, m - r));
      for (Agent i : component.agents) {
        if (!matched[i]) continue;
        frozen_until[i] = r + duration;
        trace.priorities[i] = r;
        round.frozen_now.push_back({i, duration});
      }
    }

    std::vector<Agent> unmatched;
    for (Agent i : round.graph.agents) {
      if (!matched[i]) unmatched.push_back(i);
    }
    std::stable_sort(unmatched.begin(), unmatched.end(), [&](Agent p, Agent q) {
      return trace.priorities[p] < trace.priorities[q];
    });
    for (Agent i : unmatched) {
      if (pool.empty()) break;
      const Item g = pool.items().front();
      x.bundles[i].insert(g);
      pool.erase(g);
      handed_out.insert(g);
      round.leftovers.emplace_back(i, g);
    }

    for (Agent i = 0; i < n; ++i) {
      if (!(handed_out & vals[i]->high).empty()) trace.last_high_round[i] = r;
    }
    trace.rounds.push_back(std::move(round));
  }
  return {std::move(x), std::move(trace)};
}

std::string format_trace(const MafTrace& trace) {
  std::ostringstream out;
  out << "match-and-freeze n=" << trace.agent_count << " m=" << trace.item_count
      << " K=" << to_string(trace.big_k) << "\n";
  for (const auto& round : trace.rounds) {
    out << "round " << round.round << " | active";
    for (Agent i : round.graph.agents) out << ' ' << i;
    out << " | edges";
    for (const auto& e : round.graph.edges) {
      out << ' ' << e.agent << '-' << e.item << ':' << to_string(e.weight);
    }
    out << " | matched";
    for (auto [i, g] : round.matching.pairs) out << ' ' << i << '-' << g;
    out << " | frozen";
    for (const auto& f : round.frozen_now) out << ' ' << f.agent << 'x' << f.duration;
    out << " | leftovers";
    for (auto [i, g] : round.leftovers) out << ' ' << i << '-' << g;
    out << "\n";
  }
  out << "end rounds=" << trace.rounds.size() << " | w";
  for (int w : trace.priorities) out << ' ' << w;
  out << " | r";
  for (int r : trace.last_high_round) out << ' ' << r;
  out << "\n";
  return out.str();
}

NoEnvyCertificate sufficient_no_envy(const Valuation& v, Bundle own, Bundle other) {
  const auto* pb = v.get_if<PersonalizedBivalued>();
  if (pb == nullptr) {
    throw UnsupportedValuation("the no-envy certificate needs a personalized bivalued valuation");
  }
  const bool efx_safe = v.value(own) >= v.value(other) - pb->b;
  return {efx_safe, efx_safe && v.is_factored()};
}

}  // namespace fairdiv
