#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

// Boost 1.74 defines mixed rational/integer equality as a template that calls
// itself once C++20 adds reversed operator candidates. Exact-match overloads
// take precedence over both templates.
namespace boost {
#define FAIRDIV_MIXED_EQ(Int)                                                        \
  inline bool operator==(const rational<std::int64_t>& a, Int b) {                   \
    return a.denominator() == 1 && a.numerator() == static_cast<std::int64_t>(b);    \
  }                                                                                  \
  inline bool operator==(Int b, const rational<std::int64_t>& a) { return a == b; } \
  inline bool operator!=(const rational<std::int64_t>& a, Int b) { return !(a == b); } \
  inline bool operator!=(Int b, const rational<std::int64_t>& a) { return !(a == b); }
FAIRDIV_MIXED_EQ(int)
FAIRDIV_MIXED_EQ(long)
FAIRDIV_MIXED_EQ(long long)
FAIRDIV_MIXED_EQ(unsigned)
#undef FAIRDIV_MIXED_EQ
}  // namespace boost

namespace fairdiv {

/// Exact value type used for every valuation and fair-share comparison.
using Rational = boost::rational<std::int64_t>;

/// Largest integer not exceeding q.
std::int64_t floor(const Rational& q);

bool is_integer(const Rational& q);

/// Canonical text form: "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& q);

/// Accepts "p", "-p", "p/q" and finite decimals such as "2.5".
/// Throws std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

}  // namespace fairdiv
