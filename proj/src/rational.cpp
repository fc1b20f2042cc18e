#include "fairdiv/rational.hpp"

#include <charconv>
#include <stdexcept>

namespace fairdiv {

std::int64_t floor(const Rational& q) {
  const auto num = q.numerator();
  const auto den = q.denominator();  // always positive after normalization
  auto quot = num / den;
  if (num % den != 0 && num < 0) --quot;
  return quot;
}

bool is_integer(const Rational& q) { return q.denominator() == 1; }

std::string to_string(const Rational& q) {
  if (is_integer(q)) return std::to_string(q.numerator());
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

namespace {

std::int64_t parse_int(std::string_view text, std::string_view whole) {
  std::int64_t out = 0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (text.empty() || ec != std::errc() || ptr != last) {
    throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
  }
  return out;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto num = parse_int(text.substr(0, slash), text);
    const auto den = parse_int(text.substr(slash + 1), text);
    if (den == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
    return Rational(num, den);
  }
  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    const auto frac = text.substr(dot + 1);
    if (frac.empty() || frac.size() > 12 || frac.front() == '-' || frac.front() == '+') {
      throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
    }
    const auto int_part = text.substr(0, dot);
    const bool negative = !int_part.empty() && int_part.front() == '-';
    const std::int64_t whole =
        (int_part.empty() || int_part == "-") ? 0 : parse_int(int_part, text);
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    const auto digits = parse_int(frac, text);
    Rational out(whole);
    out += Rational(negative ? -digits : digits, scale);
    return out;
  }
  return Rational(parse_int(text, text));
}

}  // namespace fairdiv
