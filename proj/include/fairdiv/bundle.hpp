#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace fairdiv {

/// Items are addressed by index 0..m-1; bundles store them as a bitmask.
inline constexpr int kMaxItems = 63;
/// Table-backed valuations materialize 2^m entries.
inline constexpr int kMaxTableItems = 24;

using Item = int;
using Agent = int;

class Bundle {
 public:
  constexpr Bundle() = default;
  constexpr explicit Bundle(std::uint64_t mask) : mask_(mask) {}

  static Bundle of(std::initializer_list<Item> items) {
    Bundle b;
    for (Item g : items) b.insert(g);
    return b;
  }
  static Bundle of(const std::vector<Item>& items) {
    Bundle b;
    for (Item g : items) b.insert(g);
    return b;
  }
  /// {0, ..., m-1}
  static constexpr Bundle full(int m) {
    return Bundle(m >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1);
  }

  constexpr std::uint64_t mask() const { return mask_; }
  constexpr int size() const { return std::popcount(mask_); }
  constexpr bool empty() const { return mask_ == 0; }
  constexpr bool contains(Item g) const { return (mask_ >> g) & 1U; }
  constexpr bool subset_of(Bundle other) const { return (mask_ & ~other.mask_) == 0; }
  constexpr bool disjoint(Bundle other) const { return (mask_ & other.mask_) == 0; }
  /// Highest referenced item index, or -1 when empty.
  constexpr int max_item() const { return mask_ == 0 ? -1 : 63 - std::countl_zero(mask_); }

  void insert(Item g) { mask_ |= std::uint64_t{1} << g; }
  void erase(Item g) { mask_ &= ~(std::uint64_t{1} << g); }

  constexpr Bundle with(Item g) const { return Bundle(mask_ | (std::uint64_t{1} << g)); }
  constexpr Bundle without(Item g) const { return Bundle(mask_ & ~(std::uint64_t{1} << g)); }

  std::vector<Item> items() const {
    std::vector<Item> out;
    out.reserve(size());
    for (auto m = mask_; m != 0; m &= m - 1) out.push_back(std::countr_zero(m));
    return out;
  }

  constexpr Bundle operator|(Bundle o) const { return Bundle(mask_ | o.mask_); }
  constexpr Bundle operator&(Bundle o) const { return Bundle(mask_ & o.mask_); }
  constexpr Bundle operator-(Bundle o) const { return Bundle(mask_ & ~o.mask_); }
  constexpr auto operator<=>(const Bundle&) const = default;

 private:
  std::uint64_t mask_ = 0;
};

/// "{0,2,5}"
std::string to_string(Bundle b);

}  // namespace fairdiv
