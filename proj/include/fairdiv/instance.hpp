#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fairdiv/bundle.hpp"
#include "fairdiv/valuation.hpp"

namespace fairdiv {

struct InstanceFlags {
  /// Table-backed valuations must pass a monotonicity scan.
  bool monotone_required = true;
  /// Every valuation must assign 0 to the empty bundle.
  bool normalized_required = true;

  bool operator==(const InstanceFlags&) const = default;
};

/// n agents, m items and one valuation per agent.
class Instance {
 public:
  /// Throws InvalidInstance if the valuations disagree with n/m or violate the flags.
  Instance(int n, int m, std::vector<Valuation> valuations, InstanceFlags flags = {},
           std::vector<std::string> labels = {});

  int agent_count() const { return n_; }
  int item_count() const { return m_; }
  const Valuation& valuation(Agent i) const { return valuations_.at(i); }
  std::span<const Valuation> valuations() const { return valuations_; }
  const InstanceFlags& flags() const { return flags_; }
  /// Optional human-readable item names (empty when absent).
  const std::vector<std::string>& labels() const { return labels_; }

  Rational value(Agent i, Bundle s) const { return valuations_.at(i).value(s); }
  bool all_of_kind(ValuationKind kind) const;

 private:
  int n_;
  int m_;
  std::vector<Valuation> valuations_;
  InstanceFlags flags_;
  std::vector<std::string> labels_;
};

/// X = <X_1, ..., X_n>; agent i owns bundles[i].
struct Allocation {
  std::vector<Bundle> bundles;

  Bundle operator[](Agent i) const { return bundles[i]; }
  int agent_count() const { return static_cast<int>(bundles.size()); }
  /// Owner of item g, or -1.
  Agent owner(Item g) const;

  auto operator<=>(const Allocation&) const = default;
  bool operator==(const Allocation&) const = default;
};

/// Allocation from an owner vector: item g goes to owners[g].
Allocation allocation_from_owners(int n, std::span<const Agent> owners);

std::string to_string(const Allocation& x);

struct AllocationViolation {
  enum class Kind { kWrongAgentCount, kOutOfRange, kOverlap, kUncovered };
  Kind kind;
  /// Offending item, or -1 for kWrongAgentCount.
  Item item;
  std::string message;
};

/// nullopt when x is a partition of the instance's items into n bundles.
std::optional<AllocationViolation> validate_allocation(const Instance& inst, const Allocation& x);

}  // namespace fairdiv
