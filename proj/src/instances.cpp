#include "fairdiv/instances.hpp"

#include <map>
#include <random>
#include <string>

#include "fairdiv/error.hpp"
#include "fairdiv/oracles.hpp"

namespace fairdiv {

namespace {

std::uint64_t binomial(int n, int k) {
  std::uint64_t out = 1;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

/// Balanced splits of the commons for each agent, as masks over common positions.
std::vector<std::uint64_t> private_halves(int n, int k) {
  std::vector<std::uint64_t> halves;
  // k-subsets of {0..2k-1} that contain 0, in lexicographic order of their
  // sorted member lists.
  std::vector<int> pick(k);
  for (int i = 0; i < k; ++i) pick[i] = i;
  while (static_cast<int>(halves.size()) < n) {
    std::uint64_t mask = 0;
    for (int c : pick) mask |= std::uint64_t{1} << c;
    halves.push_back(mask);
    int pos = k - 1;
    while (pos >= 1 && pick[pos] == 2 * k - k + pos) --pos;
    if (pos < 1) break;
    ++pick[pos];
    for (int q = pos + 1; q < k; ++q) pick[q] = pick[q - 1] + 1;
  }
  return halves;
}

}  // namespace

int stars_k(int n) {
  if (n < 2) throw std::invalid_argument("the stars construction needs n >= 2");
  int k = 1;
  while (binomial(2 * k, k) < static_cast<std::uint64_t>(2 * n)) ++k;
  return k;
}

Instance gen_nonexistence_stars(int n) {
  const int k = stars_k(n);
  const int stars = n - 2;
  const int m = 2 * k + stars;
  if (m > kMaxTableItems) {
    throw InvalidInstance("stars construction with n=" + std::to_string(n) + " needs " +
                          std::to_string(m) + " items, above the table cap of " +
                          std::to_string(kMaxTableItems));
  }
  const std::uint64_t star_mask = (std::uint64_t{1} << stars) - 1;
  const std::uint64_t common_mask = ((std::uint64_t{1} << m) - 1) & ~star_mask;
  const auto halves = private_halves(n, k);

  std::vector<Valuation> valuations;
  for (Agent i = 0; i < n; ++i) {
    const std::uint64_t a_i = halves[i] << stars;
    const std::uint64_t b_i = common_mask & ~a_i;
    std::vector<Rational> table(std::size_t{1} << m);
    for (std::uint64_t s = 0; s < table.size(); ++s) {
      const int size = std::popcount(s);
      const bool has_star = (s & star_mask) != 0;
      if (s == a_i || s == b_i) {
        table[s] = k + 1;
      } else if (has_star && size >= 2) {
        table[s] = 2 * k;
      } else if (has_star) {
        table[s] = k;
      } else {
        table[s] = size;
      }
    }
    valuations.push_back(Valuation::table(m, std::move(table)));
  }
  std::vector<std::string> labels;
  for (int s = 1; s <= stars; ++s) labels.push_back("s" + std::to_string(s));
  for (int c = 1; c <= 2 * k; ++c) labels.push_back("c" + std::to_string(c));
  return Instance(n, m, std::move(valuations), {}, std::move(labels));
}

Allocation stars_mms_allocation(int n) {
  const int k = stars_k(n);
  const int stars = n - 2;
  const int m = 2 * k + stars;
  Allocation x{std::vector<Bundle>(n)};
  for (int s = 0; s < stars; ++s) x.bundles[s].insert(s);
  const Bundle half(private_halves(1, k).front() << stars);
  x.bundles[n - 2] = half;
  x.bundles[n - 1] = Bundle::full(m) - Bundle::full(stars) - half;
  return x;
}

Instance gen_separation3() {
  constexpr int m = 6;
  // Pair values of agents 1 and 2 keyed by 1-based item pairs.
  const std::map<std::pair<int, int>, std::pair<int, int>> pairs = {
      {{1, 2}, {6, 3}}, {{1, 3}, {5, 5}}, {{1, 4}, {2, 2}}, {{1, 5}, {2, 2}}, {{1, 6}, {4, 3}},
      {{2, 3}, {2, 2}}, {{2, 4}, {3, 2}}, {{2, 5}, {5, 5}}, {{2, 6}, {4, 3}}, {{3, 4}, {4, 2}},
      {{3, 5}, {6, 4}}, {{3, 6}, {5, 2}}, {{4, 5}, {4, 3}}, {{4, 6}, {6, 5}}, {{5, 6}, {3, 4}},
  };
  std::vector<Valuation> valuations;
  for (int agent = 0; agent < 2; ++agent) {
    std::vector<Rational> table(std::size_t{1} << m);
    for (std::uint64_t s = 0; s < table.size(); ++s) {
      const int size = std::popcount(s);
      if (size == 0) {
        table[s] = 0;
      } else if (size == 1) {
        table[s] = 1;
      } else if (size >= 3) {
        table[s] = 7;
      } else {
        const auto items = Bundle(s).items();
        const auto& entry = pairs.at({items[0] + 1, items[1] + 1});
        table[s] = agent == 0 ? entry.first : entry.second;
      }
    }
    valuations.push_back(Valuation::table(m, std::move(table)));
  }
  std::vector<Rational> third;
  for (int j = 1; j <= m; ++j) third.emplace_back(100 + j);
  valuations.push_back(Valuation::additive(std::move(third)));
  return Instance(3, m, std::move(valuations), {}, {"1", "2", "3", "4", "5", "6"});
}

Instance gen_mnw_counterexample() {
  const Bundle high = Bundle::of({0, 1});
  return Instance(2, 4,
                  {Valuation::personalized_bivalued(4, 5, 1, high),
                   Valuation::personalized_bivalued(4, 3, 1, high)},
                  {}, {"g1", "g2", "g3", "g4"});
}

Instance gen_pmms_not_efx_example() {
  const std::vector<Rational> values = {0, 0, 2};
  return Instance(2, 3, {Valuation::additive(values), Valuation::additive(values)}, {},
                  {"1", "2", "3"});
}

Instance gen_table1_example() {
  constexpr int m = 18;
  std::vector<Valuation> valuations;
  const Rational a[] = {Rational(5, 2), 3, 4, 5};
  for (Agent i = 0; i < 4; ++i) {
    valuations.push_back(Valuation::personalized_bivalued(m, a[i], 1, Bundle::of({i < 2 ? 0 : 1})));
  }
  std::vector<std::string> labels = {"x", "y"};
  for (int z = 1; z <= 16; ++z) labels.push_back("z" + std::to_string(z));
  return Instance(4, m, std::move(valuations), {}, std::move(labels));
}

std::string_view to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::kNonexistenceStars: return "stars";
    case GeneratorKind::kSeparation3: return "separation3";
    case GeneratorKind::kMnwCounterexample: return "mnw";
    case GeneratorKind::kPmmsNotEfxExample: return "pmms-not-efx";
    case GeneratorKind::kTable1Example: return "table1";
    case GeneratorKind::kRandomBivalued: return "random-bivalued";
    case GeneratorKind::kRandomFactoredBivalued: return "random-factored-bivalued";
    case GeneratorKind::kRandomPairDemand: return "random-pair-demand";
    case GeneratorKind::kRandomBinaryMmsFeasible: return "random-binary-mms-feasible";
    case GeneratorKind::kRandomBinaryAdditive: return "random-binary-additive";
  }
  return "unknown";
}

std::optional<GeneratorKind> parse_generator_kind(std::string_view text) {
  for (int k = 0; k <= static_cast<int>(GeneratorKind::kRandomBinaryAdditive); ++k) {
    const auto kind = static_cast<GeneratorKind>(k);
    if (to_string(kind) == text) return kind;
  }
  return std::nullopt;
}

namespace {

class Draw {
 public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}
  /// Uniform integer in [lo, hi]; modulo reduction keeps output identical
  /// across standard library implementations.
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(rng_() % span);
  }
  bool coin(int numerator, int denominator) { return uniform(0, denominator - 1) < numerator; }

 private:
  std::mt19937_64 rng_;
};

Bundle random_subset(Draw& draw, int m) {
  Bundle b;
  for (Item g = 0; g < m; ++g) {
    if (draw.coin(1, 2)) b.insert(g);
  }
  return b;
}

void check_params(const GeneratorParams& p, int item_cap) {
  if (p.n < 1) throw std::invalid_argument("random instances need n >= 1");
  if (p.m < 0 || p.m > item_cap) {
    throw std::invalid_argument("m=" + std::to_string(p.m) + " outside [0, " +
                                std::to_string(item_cap) + "] for this generator");
  }
  if (p.max_value < 1) throw std::invalid_argument("max_value must be positive");
}

Instance random_bivalued(Draw& draw, const GeneratorParams& p, bool factored) {
  std::vector<Valuation> valuations;
  for (Agent i = 0; i < p.n; ++i) {
    Rational b = 0;
    if (!(p.allow_zero_b && draw.coin(1, 4))) b = Rational(draw.uniform(1, 4), draw.uniform(1, 2));
    Rational a;
    if (factored && b > 0) {
      a = b * draw.uniform(2, 5);
    } else {
      a = b + Rational(draw.uniform(1, 2 * p.max_value), draw.uniform(1, 3));
    }
    valuations.push_back(Valuation::personalized_bivalued(p.m, a, b, random_subset(draw, p.m)));
  }
  return Instance(p.n, p.m, std::move(valuations));
}

Instance random_pair_demand(Draw& draw, const GeneratorParams& p) {
  std::vector<Valuation> valuations;
  for (Agent i = 0; i < p.n; ++i) {
    std::vector<Rational> values;
    for (Item g = 0; g < p.m; ++g) values.emplace_back(draw.uniform(0, p.max_value));
    valuations.push_back(Valuation::pair_demand(std::move(values)));
  }
  return Instance(p.n, p.m, std::move(valuations));
}

Instance random_binary_additive(Draw& draw, const GeneratorParams& p) {
  std::vector<Valuation> valuations;
  for (Agent i = 0; i < p.n; ++i) {
    std::vector<Rational> values;
    for (Item g = 0; g < p.m; ++g) values.emplace_back(draw.coin(1, 2) ? 1 : 0);
    valuations.push_back(Valuation::additive(std::move(values)));
  }
  return Instance(p.n, p.m, std::move(valuations));
}

bool meets(Requirement r, bool holds) {
  return r == Requirement::kAny || (r == Requirement::kYes) == holds;
}

/// Proposal: threshold of a random signed additive score, with up to two
/// random entries flipped. Accepted iff it meets the requirements and passes
/// the MMS-feasibility scan.
SampleResult random_binary_feasible(Draw& draw, const GeneratorParams& p) {
  const int m = p.m;
  const std::size_t count = std::size_t{1} << m;
  std::uint64_t rejections = 0;
  std::vector<Valuation> valuations;
  for (Agent i = 0; i < p.n; ++i) {
    for (;;) {
      if (rejections >= p.rejection_limit) {
        throw RejectionLimit("binary MMS-feasible sampler rejected " +
                             std::to_string(rejections) + " proposals");
      }
      const int low_weight = p.monotone == Requirement::kYes ? 0 : -3;
      std::vector<int> weight(m);
      for (auto& w : weight) w = static_cast<int>(draw.uniform(low_weight, 5));
      int threshold = 0;
      switch (p.normalized) {
        case Requirement::kYes: threshold = static_cast<int>(draw.uniform(1, 6)); break;
        case Requirement::kNo: threshold = static_cast<int>(draw.uniform(-3, 0)); break;
        case Requirement::kAny: threshold = static_cast<int>(draw.uniform(-3, 6)); break;
      }
      std::vector<bool> ones(count);
      for (std::size_t s = 0; s < count; ++s) {
        int score = 0;
        for (Item g = 0; g < m; ++g) {
          if ((s >> g) & 1U) score += weight[g];
        }
        ones[s] = score >= threshold;
      }
      const auto flips = draw.uniform(0, 2);
      for (int f = 0; f < flips; ++f) {
        const auto s = static_cast<std::size_t>(draw.uniform(0, static_cast<std::int64_t>(count) - 1));
        ones[s] = !ones[s];
      }
      auto v = Valuation::binary_table(m, std::move(ones));
      if (meets(p.normalized, v.is_normalized()) && meets(p.monotone, v.is_monotone()) &&
          check_mms_feasible(v)) {
        valuations.push_back(std::move(v));
        break;
      }
      ++rejections;
    }
  }
  InstanceFlags flags;
  flags.monotone_required = p.monotone == Requirement::kYes;
  flags.normalized_required = p.normalized == Requirement::kYes;
  return {Instance(p.n, m, std::move(valuations), flags), rejections};
}

}  // namespace

SampleResult sample_random(const GeneratorSpec& spec) {
  Draw draw(spec.seed);
  const auto& p = spec.params;
  switch (spec.kind) {
    case GeneratorKind::kNonexistenceStars: return {gen_nonexistence_stars(p.n), 0};
    case GeneratorKind::kSeparation3: return {gen_separation3(), 0};
    case GeneratorKind::kMnwCounterexample: return {gen_mnw_counterexample(), 0};
    case GeneratorKind::kPmmsNotEfxExample: return {gen_pmms_not_efx_example(), 0};
    case GeneratorKind::kTable1Example: return {gen_table1_example(), 0};
    case GeneratorKind::kRandomBivalued:
      check_params(p, kMaxItems);
      return {random_bivalued(draw, p, false), 0};
    case GeneratorKind::kRandomFactoredBivalued:
      check_params(p, kMaxItems);
      return {random_bivalued(draw, p, true), 0};
    case GeneratorKind::kRandomPairDemand:
      check_params(p, kMaxItems);
      return {random_pair_demand(draw, p), 0};
    case GeneratorKind::kRandomBinaryMmsFeasible:
      check_params(p, 10);
      return random_binary_feasible(draw, p);
    case GeneratorKind::kRandomBinaryAdditive:
      check_params(p, kMaxItems);
      return {random_binary_additive(draw, p), 0};
  }
  throw std::invalid_argument("unknown generator kind");
}

}  // namespace fairdiv
