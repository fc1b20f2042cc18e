#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "fairdiv/instance.hpp"
#include "fairdiv/matching.hpp"
#include "fairdiv/oracles.hpp"

namespace fairdiv {

// ---------------------------------------------------------------------------
// Match-and-Freeze for personalized bivalued valuations.
//
// Each round builds the bipartite graph between active agents and remaining
// items (edge (i, g) iff g is high-valued by i, weight a_i / b_i), takes a
// maximum-cardinality maximum-weight matching, and freezes the matched agents
// of every component that left someone unmatched for floor(t - 1) rounds, t
// being the largest ratio among that component's unmatched agents. Unmatched
// agents then take leftover items in increasing priority order.
//
// Choices left open by the procedure are pinned as follows: leftovers go to
// unmatched agents ordered by (priority, index), each taking the lowest-index
// remaining item; b_i = 0 ratios are replaced by
// K = m * (1 + largest finite ratio); freezes never extend past round m.
// ---------------------------------------------------------------------------

struct FreezeEvent {
  Agent agent;
  /// Agent sits out rounds r+1 .. r+duration.
  int duration;

  bool operator==(const FreezeEvent&) const = default;
};

struct MafRound {
  int round;
  RoundGraph graph;  // graph.agents lists the active agents
  Matching matching;
  std::vector<FreezeEvent> frozen_now;
  /// Items handed to unmatched agents, in hand-out order.
  std::vector<std::pair<Agent, Item>> leftovers;
};

struct MafTrace {
  int agent_count = 0;
  int item_count = 0;
  /// Ratio used in place of a_i / b_i when b_i = 0.
  Rational big_k;
  /// Effective a_i / b_i per agent (K when b_i = 0).
  std::vector<Rational> ratios;
  std::vector<MafRound> rounds;
  /// Final priorities w_i.
  std::vector<int> priorities;
  /// Per agent, the last round in which an item it values at a_i was handed
  /// to anyone (0 if never).
  std::vector<int> last_high_round;
};

struct MafResult {
  Allocation allocation;
  MafTrace trace;
};

/// Throws UnsupportedValuation unless every valuation is personalized bivalued.
MafResult match_and_freeze(const Instance& inst);

/// One line per round, stable field order; see the README for the grammar.
std::string format_trace(const MafTrace& trace);

/// v_i(X_i) >= v_i(X_j) - b_i certifies no EFX-envy; with a factored
/// valuation it also certifies no PMMS-envy. A false verdict is inconclusive.
struct NoEnvyCertificate {
  bool efx_safe;
  bool pmms_safe;
};

NoEnvyCertificate sufficient_no_envy(const Valuation& v, Bundle own, Bundle other);

// ---------------------------------------------------------------------------
// Cut-and-Choose-Graph procedure for binary-valued MMS-feasible valuations.
// ---------------------------------------------------------------------------

/// pi(i) = s when v_i(X_s) >= mu_i(X_s + X_j) for every j != s; otherwise the
/// lowest-index j != s with v_i(X_s) < mu_i(X_s + X_j).
std::vector<Agent> build_cut_and_choose_graph(const Instance& inst, const Allocation& x, Agent s);
std::vector<Agent> build_cut_and_choose_graph(const Instance& inst, const Allocation& x, Agent s,
                                              FairShareCache& cache);

enum class WalkCase { kCycle, kLollipop };

struct CcgIteration {
  Agent s;
  std::vector<Agent> pi;
  /// i_0 = s, i_1 = pi(i_0), ... up to the first repeat.
  std::vector<Agent> walk;
  WalkCase walk_case;
  bool swap_applied = false;
  /// Lollipop case: the chooser i_{w-1}, its values for the part it received
  /// and the other part, and its two-way share of the split union.
  Agent chooser = -1;
  Rational chooser_value;
  Rational chooser_other_value;
  Rational chooser_share;
  /// Potential after the iteration: total value and number of agents
  /// satisfying PMMS.
  int W = 0;
  int E = 0;
};

struct CcgTrace {
  int initial_W = 0;
  int initial_E = 0;
  std::vector<CcgIteration> iterations;
};

struct CcgResult {
  Allocation allocation;
  CcgTrace trace;
};

/// Binary-valued: BinaryTable, or ExplicitTable with every entry in {0, 1}.
bool is_binary_valued(const Valuation& v);

/// Item g goes to agent g mod n.
Allocation round_robin_allocation(int n, int m);

/// Starts from `initial` (round robin when absent). Throws UnsupportedValuation
/// for non-binary valuations and NonTermination when n^2 iterations pass
/// without reaching PMMS.
CcgResult cut_and_choose_graph_procedure(const Instance& inst,
                                         std::optional<Allocation> initial = std::nullopt);

std::string format_trace(const CcgTrace& trace);

// ---------------------------------------------------------------------------
// Reversed Round-Robin for pair-demand valuations.
// ---------------------------------------------------------------------------

struct RrrResult {
  Allocation allocation;
  /// Items after padding to max(m, 2n); indices >= m are zero-valued dummies.
  int padded_item_count = 0;
  std::vector<Item> first_picks;
  std::vector<Item> second_picks;
};

/// Agents pick their favourite remaining item in order 0..n-1, then again in
/// order n-1..0 (ties to the lowest item index); the rest goes to
/// leftover_owner.
RrrResult reversed_round_robin(const Instance& inst, Agent leftover_owner = 0);

struct PairDemandShare {
  Rational closed_form;
  Rational brute_force;
  bool agrees;
};

/// For four items with singleton values a <= b <= c <= d, the two-way share of
/// a pair-demand valuation is min(v({a,d}), v({b,c})); this evaluates both that
/// expression and the enumerated share.
PairDemandShare lemma_pair_demand_mu(const std::array<Rational, 4>& sorted_values);

}  // namespace fairdiv
