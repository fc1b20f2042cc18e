#pragma once

// Brute-force fair shares and fairness checks. Everything here enumerates
// exhaustively and is exact; an enumeration that would exceed the budget
// throws BudgetExceeded instead of approximating.

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fairdiv/instance.hpp"

namespace fairdiv {

/// Cap on the number of labeled assignments an oracle may enumerate.
struct EnumerationBudget {
  std::uint64_t max_evaluations = 100'000'000;

  /// Default budget, overridden by the FAIRDIV_BUDGET environment variable.
  static EnumerationBudget from_env();
  /// Throws BudgetExceeded when count > max_evaluations.
  void require(std::uint64_t count, std::string_view what) const;
};

/// base^exponent, saturating at UINT64_MAX.
std::uint64_t saturating_pow(std::uint64_t base, int exponent);

struct MaximinResult {
  Rational mu;
  /// k labeled parts whose minimum value is mu.
  std::vector<Bundle> witness;
};

/// Maximin share of s split k ways. Enumerates all k^|s| labeled partitions;
/// among optimal partitions the one with the lexicographically smallest label
/// vector (items in increasing order) is returned.
MaximinResult mu(const Valuation& v, Bundle s, int k, const EnumerationBudget& budget = {});

/// Memoizes mu(v_i, S, 2) per agent and bundle.
class FairShareCache {
 public:
  explicit FairShareCache(const Instance& inst, EnumerationBudget budget = {});
  const Rational& pairwise(Agent i, Bundle s);

 private:
  const Instance* inst_;
  EnumerationBudget budget_;
  std::vector<std::unordered_map<std::uint64_t, Rational>> memo_;
};

enum class FairnessNotion { kEFX, kEFXPositive, kPMMS, kMMS };

std::string_view to_string(FairnessNotion notion);
std::optional<FairnessNotion> parse_fairness_notion(std::string_view text);

struct Violation {
  Agent envier;
  /// Agent being envied; -1 for MMS, which compares against the whole item set.
  Agent envied;
  /// EFX family: the item whose removal still leaves envy.
  std::optional<Item> item;
  /// PMMS/MMS: a maximin partition beating the envier's bundle.
  std::vector<Bundle> partition;
  Rational envier_value;
  /// The value the envier falls short of.
  Rational threshold;
};

struct FairnessReport {
  FairnessNotion notion;
  bool holds = true;
  std::vector<Violation> violations;
};

/// EFX: v_i(X_i) >= v_i(X_j \ {g}) for all i != j and g in X_j.
FairnessReport check_efx(const Instance& inst, const Allocation& x);

/// EFX restricted to items the envier values positively. Additive only.
FairnessReport check_efx_positive(const Instance& inst, const Allocation& x);

/// PMMS: v_i(X_i) >= mu_i(X_i + X_j, 2) for all i != j.
FairnessReport check_pmms(const Instance& inst, const Allocation& x,
                          const EnumerationBudget& budget = {});
FairnessReport check_pmms(const Instance& inst, const Allocation& x, FairShareCache& cache);

/// MMS: v_i(X_i) >= mu_i(M, n) for all i.
FairnessReport check_mms(const Instance& inst, const Allocation& x,
                         const EnumerationBudget& budget = {});

FairnessReport check(const Instance& inst, const Allocation& x, FairnessNotion notion,
                     const EnumerationBudget& budget = {});

/// True iff for every S, every bipartition's larger side is worth at least
/// every bipartition's smaller side.
bool check_mms_feasible(const Valuation& v, const EnumerationBudget& budget = {});

/// Calls fn(owners) for every assignment of m items to n agents in
/// lexicographic order of the owner vector (item 0 most significant).
/// fn returns false to stop early. Returns the number of assignments visited.
template <class Fn>
std::uint64_t for_each_assignment(int n, int m, Fn&& fn) {
  std::vector<Agent> owners(m, 0);
  std::uint64_t visited = 0;
  for (;;) {
    ++visited;
    if (!fn(static_cast<const std::vector<Agent>&>(owners))) return visited;
    int pos = m - 1;
    while (pos >= 0 && owners[pos] == n - 1) owners[pos--] = 0;
    if (pos < 0) return visited;
    ++owners[pos];
  }
}

struct NashWelfareResult {
  Rational max_nw;
  /// All maximizers in lexicographic owner-vector order.
  std::vector<Allocation> argmax;
  std::uint64_t scanned = 0;
};

NashWelfareResult nash_welfare_maximizers(const Instance& inst,
                                          const EnumerationBudget& budget = {});

struct FairSearchResult {
  std::optional<Allocation> found;
  std::uint64_t scanned = 0;
};

/// First allocation (owner-vector order) satisfying the notion.
FairSearchResult exists_fair_allocation(const Instance& inst, FairnessNotion notion,
                                        const EnumerationBudget& budget = {});

/// All allocations giving every agent exactly m/n items, in owner-vector order.
std::vector<Allocation> balanced_allocations(int n, int m);

struct CompatibilityNode {
  Agent agent;
  Bundle pair;
};

/// Nodes (agent, 2-item bundle); an edge joins (i, S) and (j, T) when i != j,
/// S and T are disjoint, and neither agent PMMS-envies the other holding them.
struct CompatibilityGraph {
  std::vector<CompatibilityNode> nodes;
  std::vector<std::pair<int, int>> edges;

  std::vector<int> degrees() const;
  /// Three pairwise-adjacent nodes of three distinct agents, if any.
  std::optional<std::array<int, 3>> find_triangle() const;
};

CompatibilityGraph pair_compatibility_graph(const Instance& inst,
                                            const EnumerationBudget& budget = {});

}  // namespace fairdiv
