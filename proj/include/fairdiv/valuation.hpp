#pragma once

#include <string_view>
#include <variant>
#include <vector>

#include "fairdiv/bundle.hpp"
#include "fairdiv/rational.hpp"

namespace fairdiv {

/// v(S) = sum of member values.
struct Additive {
  std::vector<Rational> values;
};

/// Additive with every item worth either a (items in `high`) or b, a > b >= 0.
struct PersonalizedBivalued {
  Rational a;
  Rational b;
  Bundle high;
};

/// v(S) = sum of the two largest member values.
struct PairDemand {
  std::vector<Rational> values;
};

/// Arbitrary set function given as a table indexed by bundle mask.
struct ExplicitTable {
  std::vector<Rational> table;
};

/// Set function with values in {0, 1}; ones[mask] is true iff v(mask) = 1.
struct BinaryTable {
  std::vector<bool> ones;
};

enum class ValuationKind { kAdditive, kPersonalizedBivalued, kPairDemand, kExplicitTable, kBinaryTable };

std::string_view to_string(ValuationKind kind);

/// One agent's valuation over m items. Immutable once built; the named
/// constructors enforce the per-representation invariants and throw
/// InvalidInstance when they do not hold.
class Valuation {
 public:
  using Repr = std::variant<Additive, PersonalizedBivalued, PairDemand, ExplicitTable, BinaryTable>;

  static Valuation additive(std::vector<Rational> values);
  static Valuation personalized_bivalued(int m, Rational a, Rational b, Bundle high);
  static Valuation pair_demand(std::vector<Rational> values);
  static Valuation table(int m, std::vector<Rational> table);
  static Valuation binary_table(int m, std::vector<bool> ones);

  int item_count() const { return m_; }
  ValuationKind kind() const { return static_cast<ValuationKind>(repr_.index()); }
  const Repr& repr() const { return repr_; }

  template <class T>
  const T* get_if() const {
    return std::get_if<T>(&repr_);
  }

  /// Throws InvalidBundle if s references an item >= m.
  Rational value(Bundle s) const;
  Rational singleton(Item g) const { return value(Bundle{}.with(g)); }

  /// Additive and personalized bivalued valuations.
  bool is_additive() const;
  /// Personalized bivalued with b = 0 or a/b integral. False for other classes.
  bool is_factored() const;
  bool is_monotone() const;
  bool is_normalized() const { return value(Bundle{}) == 0; }

  /// Same set function as an ExplicitTable; requires m <= kMaxTableItems.
  Valuation materialize() const;

 private:
  Valuation(int m, Repr repr) : m_(m), repr_(std::move(repr)) {}
  Rational value_unchecked(Bundle s) const;

  int m_ = 0;
  Repr repr_;
};

}  // namespace fairdiv
