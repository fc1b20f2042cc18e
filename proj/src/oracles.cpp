#include "fairdiv/oracles.hpp"

#include <charconv>
#include <cstdlib>
#include <limits>
#include <string>

#include "fairdiv/error.hpp"

namespace fairdiv {

EnumerationBudget EnumerationBudget::from_env() {
  EnumerationBudget budget;
  if (const char* env = std::getenv("FAIRDIV_BUDGET"); env != nullptr && *env != '\0') {
    const std::string_view text(env);
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      throw std::invalid_argument("FAIRDIV_BUDGET must be a non-negative integer, got '" +
                                  std::string(text) + "'");
    }
    budget.max_evaluations = value;
  }
  return budget;
}

void EnumerationBudget::require(std::uint64_t count, std::string_view what) const {
  if (count > max_evaluations) {
    throw BudgetExceeded(std::string(what) + " needs " +
                         (count == std::numeric_limits<std::uint64_t>::max()
                              ? std::string("more than 2^64")
                              : std::to_string(count)) +
                         " evaluations, budget is " + std::to_string(max_evaluations));
  }
}

std::uint64_t saturating_pow(std::uint64_t base, int exponent) {
  std::uint64_t out = 1;
  for (int e = 0; e < exponent; ++e) {
    if (base != 0 && out > std::numeric_limits<std::uint64_t>::max() / base) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    out *= base;
  }
  return out;
}

MaximinResult mu(const Valuation& v, Bundle s, int k, const EnumerationBudget& budget) {
  if (k < 1) throw std::invalid_argument("mu needs k >= 1, got " + std::to_string(k));
  if (!s.subset_of(Bundle::full(v.item_count()))) {
    throw InvalidBundle("bundle " + to_string(s) + " exceeds the valuation's items");
  }
  const auto items = s.items();
  const int size = static_cast<int>(items.size());
  budget.require(saturating_pow(k, size), "maximin share enumeration");

  // Odometer over label vectors; the last item is the least significant digit,
  // so the visit order is lexicographic and the first optimum is kept.
  std::vector<int> labels(size, 0);
  std::vector<Bundle> parts(k);
  parts[0] = s;

  MaximinResult best;
  bool have_best = false;
  for (;;) {
    Rational worst = v.value(parts[0]);
    for (int p = 1; p < k; ++p) {
      const Rational here = v.value(parts[p]);
      if (here < worst) worst = here;
    }
    if (!have_best || worst > best.mu) {
      best.mu = worst;
      best.witness = parts;
      have_best = true;
    }
    int pos = size - 1;
    while (pos >= 0 && labels[pos] == k - 1) {
      parts[k - 1].erase(items[pos]);
      parts[0].insert(items[pos]);
      labels[pos--] = 0;
    }
    if (pos < 0) break;
    parts[labels[pos]].erase(items[pos]);
    ++labels[pos];
    parts[labels[pos]].insert(items[pos]);
  }
  return best;
}

FairShareCache::FairShareCache(const Instance& inst, EnumerationBudget budget)
    : inst_(&inst), budget_(budget), memo_(inst.agent_count()) {}

const Rational& FairShareCache::pairwise(Agent i, Bundle s) {
  auto& table = memo_.at(i);
  if (auto it = table.find(s.mask()); it != table.end()) return it->second;
  return table.emplace(s.mask(), mu(inst_->valuation(i), s, 2, budget_).mu).first->second;
}

std::string_view to_string(FairnessNotion notion) {
  switch (notion) {
    case FairnessNotion::kEFX: return "efx";
    case FairnessNotion::kEFXPositive: return "efx+";
    case FairnessNotion::kPMMS: return "pmms";
    case FairnessNotion::kMMS: return "mms";
  }
  return "unknown";
}

std::optional<FairnessNotion> parse_fairness_notion(std::string_view text) {
  if (text == "efx") return FairnessNotion::kEFX;
  if (text == "efx+") return FairnessNotion::kEFXPositive;
  if (text == "pmms") return FairnessNotion::kPMMS;
  if (text == "mms") return FairnessNotion::kMMS;
  return std::nullopt;
}

namespace {

void require_valid(const Instance& inst, const Allocation& x) {
  if (auto bad = validate_allocation(inst, x)) throw std::invalid_argument(bad->message);
}

FairnessReport efx_family(const Instance& inst, const Allocation& x, FairnessNotion notion) {
  require_valid(inst, x);
  const bool positive_only = notion == FairnessNotion::kEFXPositive;
  FairnessReport report{notion, true, {}};
  const int n = inst.agent_count();
  for (Agent i = 0; i < n; ++i) {
    const auto& v = inst.valuation(i);
    const Rational own = v.value(x[i]);
    for (Agent j = 0; j < n; ++j) {
      if (j == i) continue;
      for (Item g : x[j].items()) {
        if (positive_only && !(v.singleton(g) > 0)) continue;
        const Rational rest = v.value(x[j].without(g));
        if (own < rest) {
          report.violations.push_back({i, j, g, {}, own, rest});
          break;
        }
      }
    }
  }
  report.holds = report.violations.empty();
  return report;
}

template <class ShareFn>
FairnessReport pmms_with(const Instance& inst, const Allocation& x, ShareFn&& share,
                         const EnumerationBudget& budget) {
  require_valid(inst, x);
  FairnessReport report{FairnessNotion::kPMMS, true, {}};
  const int n = inst.agent_count();
  for (Agent i = 0; i < n; ++i) {
    const auto& v = inst.valuation(i);
    const Rational own = v.value(x[i]);
    for (Agent j = 0; j < n; ++j) {
      if (j == i) continue;
      const Bundle both = x[i] | x[j];
      if (own < share(i, both)) {
        auto result = mu(v, both, 2, budget);
        report.violations.push_back({i, j, std::nullopt, std::move(result.witness), own, result.mu});
      }
    }
  }
  report.holds = report.violations.empty();
  return report;
}

}  // namespace

FairnessReport check_efx(const Instance& inst, const Allocation& x) {
  return efx_family(inst, x, FairnessNotion::kEFX);
}

FairnessReport check_efx_positive(const Instance& inst, const Allocation& x) {
  for (Agent i = 0; i < inst.agent_count(); ++i) {
    if (!inst.valuation(i).is_additive()) {
      throw UnsupportedValuation("efx+ is defined for additive valuations; agent " +
                                 std::to_string(i) + " has a " +
                                 std::string(to_string(inst.valuation(i).kind())) + " valuation");
    }
  }
  return efx_family(inst, x, FairnessNotion::kEFXPositive);
}

FairnessReport check_pmms(const Instance& inst, const Allocation& x,
                          const EnumerationBudget& budget) {
  return pmms_with(
      inst, x, [&](Agent i, Bundle s) { return mu(inst.valuation(i), s, 2, budget).mu; }, budget);
}

FairnessReport check_pmms(const Instance& inst, const Allocation& x, FairShareCache& cache) {
  return pmms_with(
      inst, x, [&](Agent i, Bundle s) { return cache.pairwise(i, s); }, EnumerationBudget{});
}

FairnessReport check_mms(const Instance& inst, const Allocation& x,
                         const EnumerationBudget& budget) {
  require_valid(inst, x);
  FairnessReport report{FairnessNotion::kMMS, true, {}};
  const int n = inst.agent_count();
  const Bundle all = Bundle::full(inst.item_count());
  for (Agent i = 0; i < n; ++i) {
    const auto& v = inst.valuation(i);
    const Rational own = v.value(x[i]);
    auto share = mu(v, all, n, budget);
    if (own < share.mu) {
      report.violations.push_back({i, -1, std::nullopt, std::move(share.witness), own, share.mu});
    }
  }
  report.holds = report.violations.empty();
  return report;
}

FairnessReport check(const Instance& inst, const Allocation& x, FairnessNotion notion,
                     const EnumerationBudget& budget) {
  switch (notion) {
    case FairnessNotion::kEFX: return check_efx(inst, x);
    case FairnessNotion::kEFXPositive: return check_efx_positive(inst, x);
    case FairnessNotion::kPMMS: return check_pmms(inst, x, budget);
    case FairnessNotion::kMMS: return check_mms(inst, x, budget);
  }
  throw std::invalid_argument("unknown fairness notion");
}

bool check_mms_feasible(const Valuation& v, const EnumerationBudget& budget) {
  const int m = v.item_count();
  if (m > kMaxTableItems) {
    throw BudgetExceeded("MMS-feasibility scan needs m <= " + std::to_string(kMaxTableItems));
  }
  budget.require(saturating_pow(3, m), "MMS-feasibility scan");
  const Valuation table = v.materialize();
  const auto& values = table.get_if<ExplicitTable>()->table;
  const std::uint64_t count = std::uint64_t{1} << m;
  for (std::uint64_t s = 0; s < count; ++s) {
    // One pass over bipartitions (a, s \ a) yields both the fair share
    // (max of mins) and the smallest larger side (min of maxes).
    bool first = true;
    Rational share;
    Rational min_of_max;
    for (std::uint64_t a = s;; a = (a - 1) & s) {
      const Rational& left = values[a];
      const Rational& right = values[s & ~a];
      const Rational& lo = left < right ? left : right;
      const Rational& hi = left < right ? right : left;
      if (first || lo > share) share = lo;
      if (first || hi < min_of_max) min_of_max = hi;
      first = false;
      if (a == 0) break;
    }
    if (min_of_max < share) return false;
  }
  return true;
}

NashWelfareResult nash_welfare_maximizers(const Instance& inst, const EnumerationBudget& budget) {
  const int n = inst.agent_count();
  const int m = inst.item_count();
  budget.require(saturating_pow(n, m), "Nash welfare enumeration");
  NashWelfareResult result;
  bool first = true;
  result.scanned = for_each_assignment(n, m, [&](const std::vector<Agent>& owners) {
    Allocation x = allocation_from_owners(n, owners);
    Rational product = 1;
    for (Agent i = 0; i < n; ++i) {
      product *= inst.value(i, x[i]);
      if (product == 0) break;
    }
    if (first || product > result.max_nw) {
      result.max_nw = product;
      result.argmax.clear();
      result.argmax.push_back(std::move(x));
      first = false;
    } else if (product == result.max_nw) {
      result.argmax.push_back(std::move(x));
    }
    return true;
  });
  return result;
}

FairSearchResult exists_fair_allocation(const Instance& inst, FairnessNotion notion,
                                        const EnumerationBudget& budget) {
  const int n = inst.agent_count();
  const int m = inst.item_count();
  budget.require(saturating_pow(n, m), "allocation enumeration");

  std::vector<Rational> mms_share;
  if (notion == FairnessNotion::kMMS) {
    for (Agent i = 0; i < n; ++i) {
      mms_share.push_back(mu(inst.valuation(i), Bundle::full(m), n, budget).mu);
    }
  }
  if (notion == FairnessNotion::kEFXPositive) {
    for (Agent i = 0; i < n; ++i) {
      if (!inst.valuation(i).is_additive()) {
        throw UnsupportedValuation("efx+ is defined for additive valuations only");
      }
    }
  }
  FairShareCache cache(inst, budget);

  auto satisfies = [&](const Allocation& x) {
    switch (notion) {
      case FairnessNotion::kMMS:
        for (Agent i = 0; i < n; ++i) {
          if (inst.value(i, x[i]) < mms_share[i]) return false;
        }
        return true;
      case FairnessNotion::kPMMS:
        for (Agent i = 0; i < n; ++i) {
          const Rational own = inst.value(i, x[i]);
          for (Agent j = 0; j < n; ++j) {
            if (j != i && own < cache.pairwise(i, x[i] | x[j])) return false;
          }
        }
        return true;
      case FairnessNotion::kEFX: return check_efx(inst, x).holds;
      case FairnessNotion::kEFXPositive: return check_efx_positive(inst, x).holds;
    }
    return false;
  };

  FairSearchResult result;
  result.scanned = for_each_assignment(n, m, [&](const std::vector<Agent>& owners) {
    Allocation x = allocation_from_owners(n, owners);
    if (satisfies(x)) {
      result.found = std::move(x);
      return false;
    }
    return true;
  });
  return result;
}

std::vector<Allocation> balanced_allocations(int n, int m) {
  if (n < 1 || m % n != 0) {
    throw std::invalid_argument("balanced allocations need m divisible by n");
  }
  const int per_agent = m / n;
  std::vector<Allocation> out;
  std::vector<int> load(n, 0);
  std::vector<Agent> owners(m, 0);
  // Depth-first over items in index order keeps owner-vector order.
  auto recurse = [&](auto&& self, int g) -> void {
    if (g == m) {
      out.push_back(allocation_from_owners(n, owners));
      return;
    }
    for (Agent i = 0; i < n; ++i) {
      if (load[i] == per_agent) continue;
      owners[g] = i;
      ++load[i];
      self(self, g + 1);
      --load[i];
    }
  };
  recurse(recurse, 0);
  return out;
}

std::vector<int> CompatibilityGraph::degrees() const {
  std::vector<int> deg(nodes.size(), 0);
  for (auto [a, b] : edges) {
    ++deg[a];
    ++deg[b];
  }
  return deg;
}

std::optional<std::array<int, 3>> CompatibilityGraph::find_triangle() const {
  std::vector<std::vector<bool>> adj(nodes.size(), std::vector<bool>(nodes.size(), false));
  for (auto [a, b] : edges) adj[a][b] = adj[b][a] = true;
  for (auto [a, b] : edges) {
    for (int c = 0; c < static_cast<int>(nodes.size()); ++c) {
      if (!adj[a][c] || !adj[b][c]) continue;
      const Agent x = nodes[a].agent;
      const Agent y = nodes[b].agent;
      const Agent z = nodes[c].agent;
      if (x != y && y != z && x != z) return std::array<int, 3>{a, b, c};
    }
  }
  return std::nullopt;
}

CompatibilityGraph pair_compatibility_graph(const Instance& inst,
                                            const EnumerationBudget& budget) {
  const int n = inst.agent_count();
  const int m = inst.item_count();
  CompatibilityGraph graph;
  for (Agent i = 0; i < n; ++i) {
    for (Item a = 0; a < m; ++a) {
      for (Item b = a + 1; b < m; ++b) graph.nodes.push_back({i, Bundle::of({a, b})});
    }
  }
  FairShareCache cache(inst, budget);
  auto content = [&](const CompatibilityNode& node, Bundle both) {
    return inst.value(node.agent, node.pair) >= cache.pairwise(node.agent, both);
  };
  const int count = static_cast<int>(graph.nodes.size());
  for (int p = 0; p < count; ++p) {
    for (int q = p + 1; q < count; ++q) {
      const auto& u = graph.nodes[p];
      const auto& w = graph.nodes[q];
      if (u.agent == w.agent || !u.pair.disjoint(w.pair)) continue;
      const Bundle both = u.pair | w.pair;
      if (content(u, both) && content(w, both)) graph.edges.emplace_back(p, q);
    }
  }
  return graph;
}

}  // namespace fairdiv
