#include "fairdiv/valuation.hpp"

#include <algorithm>
#include <string>

#include "fairdiv/error.hpp"

namespace fairdiv {

std::string to_string(Bundle b) {
  std::string out = "{";
  bool first = true;
  for (Item g : b.items()) {
    if (!first) out += ',';
    out += std::to_string(g);
    first = false;
  }
  return out + "}";
}

std::string_view to_string(ValuationKind kind) {
  switch (kind) {
    case ValuationKind::kAdditive: return "additive";
    case ValuationKind::kPersonalizedBivalued: return "personalized_bivalued";
    case ValuationKind::kPairDemand: return "pair_demand";
    case ValuationKind::kExplicitTable: return "table";
    case ValuationKind::kBinaryTable: return "binary_table";
  }
  return "unknown";
}

namespace {

void check_item_count(int m) {
  if (m < 0 || m > kMaxItems) {
    throw InvalidInstance("item count " + std::to_string(m) + " outside [0, " +
                          std::to_string(kMaxItems) + "]");
  }
}

void check_table_items(int m) {
  if (m < 0 || m > kMaxTableItems) {
    throw InvalidInstance("table valuations support at most " + std::to_string(kMaxTableItems) +
                          " items, got " + std::to_string(m));
  }
}

void check_non_negative(const std::vector<Rational>& values, std::string_view what) {
  for (std::size_t g = 0; g < values.size(); ++g) {
    if (values[g] < 0) {
      throw InvalidInstance(std::string(what) + " value of item " + std::to_string(g) +
                            " is negative");
    }
  }
}

}  // namespace

Valuation Valuation::additive(std::vector<Rational> values) {
  const int m = static_cast<int>(values.size());
  check_item_count(m);
  check_non_negative(values, "additive");
  return Valuation(m, Additive{std::move(values)});
}

Valuation Valuation::personalized_bivalued(int m, Rational a, Rational b, Bundle high) {
  check_item_count(m);
  if (!(a > b) || b < 0) {
    throw InvalidInstance("personalized bivalued requires a > b >= 0, got a=" + to_string(a) +
                          " b=" + to_string(b));
  }
  if (!high.subset_of(Bundle::full(m))) {
    throw InvalidInstance("high-value items reference an item >= m");
  }
  return Valuation(m, PersonalizedBivalued{a, b, high});
}

Valuation Valuation::pair_demand(std::vector<Rational> values) {
  const int m = static_cast<int>(values.size());
  check_item_count(m);
  check_non_negative(values, "pair-demand");
  return Valuation(m, PairDemand{std::move(values)});
}

Valuation Valuation::table(int m, std::vector<Rational> table) {
  check_table_items(m);
  if (table.size() != (std::size_t{1} << m)) {
    throw InvalidInstance("table needs 2^" + std::to_string(m) + " entries, got " +
                          std::to_string(table.size()));
  }
  return Valuation(m, ExplicitTable{std::move(table)});
}

Valuation Valuation::binary_table(int m, std::vector<bool> ones) {
  check_table_items(m);
  if (ones.size() != (std::size_t{1} << m)) {
    throw InvalidInstance("binary table needs 2^" + std::to_string(m) + " entries, got " +
                          std::to_string(ones.size()));
  }
  return Valuation(m, BinaryTable{std::move(ones)});
}

Rational Valuation::value(Bundle s) const {
  if (!s.subset_of(Bundle::full(m_))) {
    throw InvalidBundle("bundle " + fairdiv::to_string(s) + " references item " +
                        std::to_string(s.max_item()) + " but m = " + std::to_string(m_));
  }
  return value_unchecked(s);
}

Rational Valuation::value_unchecked(Bundle s) const {
  struct Visitor {
    Bundle s;
    Rational operator()(const Additive& v) const {
      Rational sum = 0;
      for (auto m = s.mask(); m != 0; m &= m - 1) sum += v.values[std::countr_zero(m)];
      return sum;
    }
    Rational operator()(const PersonalizedBivalued& v) const {
      const int high = (s & v.high).size();
      const int low = s.size() - high;
      return v.a * high + v.b * low;
    }
    Rational operator()(const PairDemand& v) const {
      Rational best = 0;
      Rational second = 0;
      for (auto m = s.mask(); m != 0; m &= m - 1) {
        const Rational& x = v.values[std::countr_zero(m)];
        if (x > best) {
          second = best;
          best = x;
        } else if (x > second) {
          second = x;
        }
      }
      return best + second;
    }
    Rational operator()(const ExplicitTable& v) const { return v.table[s.mask()]; }
    Rational operator()(const BinaryTable& v) const { return v.ones[s.mask()] ? 1 : 0; }
  };
  return std::visit(Visitor{s}, repr_);
}

bool Valuation::is_additive() const {
  return kind() == ValuationKind::kAdditive || kind() == ValuationKind::kPersonalizedBivalued;
}

bool Valuation::is_factored() const {
  const auto* pb = get_if<PersonalizedBivalued>();
  if (pb == nullptr) return false;
  return pb->b == 0 || is_integer(pb->a / pb->b);
}

bool Valuation::is_monotone() const {
  if (kind() != ValuationKind::kExplicitTable && kind() != ValuationKind::kBinaryTable) {
    return true;  // non-negative additive and pair-demand
  }
  const std::uint64_t count = std::uint64_t{1} << m_;
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    const Rational here = value_unchecked(Bundle(mask));
    for (int g = 0; g < m_; ++g) {
      if ((mask >> g) & 1U) continue;
      if (value_unchecked(Bundle(mask | (std::uint64_t{1} << g))) < here) return false;
    }
  }
  return true;
}

Valuation Valuation::materialize() const {
  check_table_items(m_);
  const std::uint64_t count = std::uint64_t{1} << m_;
  std::vector<Rational> table(count);
  for (std::uint64_t mask = 0; mask < count; ++mask) table[mask] = value_unchecked(Bundle(mask));
  return Valuation(m_, ExplicitTable{std::move(table)});
}

}  // namespace fairdiv
