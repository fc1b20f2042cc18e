#include "fairdiv/instance.hpp"

#include "fairdiv/error.hpp"

namespace fairdiv {

Instance::Instance(int n, int m, std::vector<Valuation> valuations, InstanceFlags flags,
                   std::vector<std::string> labels)
    : n_(n), m_(m), valuations_(std::move(valuations)), flags_(flags), labels_(std::move(labels)) {
  if (n_ < 1) throw InvalidInstance("an instance needs at least one agent");
  if (m_ < 0 || m_ > kMaxItems) {
    throw InvalidInstance("item count " + std::to_string(m_) + " outside [0, " +
                          std::to_string(kMaxItems) + "]");
  }
  if (static_cast<int>(valuations_.size()) != n_) {
    throw InvalidInstance("expected " + std::to_string(n_) + " valuations, got " +
                          std::to_string(valuations_.size()));
  }
  if (!labels_.empty() && static_cast<int>(labels_.size()) != m_) {
    throw InvalidInstance("expected " + std::to_string(m_) + " item labels, got " +
                          std::to_string(labels_.size()));
  }
  for (int i = 0; i < n_; ++i) {
    const auto& v = valuations_[i];
    if (v.item_count() != m_) {
      throw InvalidInstance("valuation of agent " + std::to_string(i) + " addresses " +
                            std::to_string(v.item_count()) + " items, instance has " +
                            std::to_string(m_));
    }
    if (flags_.normalized_required && !v.is_normalized()) {
      throw InvalidInstance("valuation of agent " + std::to_string(i) +
                            " is not normalized (v(empty) != 0)");
    }
    if (flags_.monotone_required && !v.is_monotone()) {
      throw InvalidInstance("valuation of agent " + std::to_string(i) + " is not monotone");
    }
  }
}

bool Instance::all_of_kind(ValuationKind kind) const {
  for (const auto& v : valuations_) {
    if (v.kind() != kind) return false;
  }
  return true;
}

Agent Allocation::owner(Item g) const {
  for (int i = 0; i < agent_count(); ++i) {
    if (bundles[i].contains(g)) return i;
  }
  return -1;
}

Allocation allocation_from_owners(int n, std::span<const Agent> owners) {
  Allocation x{std::vector<Bundle>(n)};
  for (std::size_t g = 0; g < owners.size(); ++g) x.bundles[owners[g]].insert(static_cast<Item>(g));
  return x;
}

std::string to_string(const Allocation& x) {
  std::string out = "<";
  for (int i = 0; i < x.agent_count(); ++i) {
    if (i > 0) out += ", ";
    out += to_string(x.bundles[i]);
  }
  return out + ">";
}

std::optional<AllocationViolation> validate_allocation(const Instance& inst, const Allocation& x) {
  using Kind = AllocationViolation::Kind;
  if (x.agent_count() != inst.agent_count()) {
    return AllocationViolation{Kind::kWrongAgentCount, -1,
                               "allocation has " + std::to_string(x.agent_count()) +
                                   " bundles for " + std::to_string(inst.agent_count()) +
                                   " agents"};
  }
  const Bundle all = Bundle::full(inst.item_count());
  Bundle seen;
  for (int i = 0; i < x.agent_count(); ++i) {
    const Bundle b = x.bundles[i];
    if (!b.subset_of(all)) {
      const Item g = (b - all).items().front();
      return AllocationViolation{Kind::kOutOfRange, g,
                                 "agent " + std::to_string(i) + " holds item " +
                                     std::to_string(g) + " outside the instance"};
    }
    if (!b.disjoint(seen)) {
      const Item g = (b & seen).items().front();
      return AllocationViolation{Kind::kOverlap, g,
                                 "item " + std::to_string(g) + " assigned to more than one agent"};
    }
    seen = seen | b;
  }
  if (seen != all) {
    const Item g = (all - seen).items().front();
    return AllocationViolation{Kind::kUncovered, g,
                               "item " + std::to_string(g) + " is not assigned"};
  }
  return std::nullopt;
}

}  // namespace fairdiv
