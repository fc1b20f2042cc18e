#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "fairdiv/instance.hpp"

namespace fairdiv {

/// Instance with no PMMS allocation but an MMS allocation: n-2 "star" items
/// followed by 2k "common" items, k minimal with C(2k, k) >= 2n. Agent i has a
/// private balanced split (A_i, B_i) of the commons worth k+1 per side; A_i is
/// the i-th k-subset of the commons containing the first common (lexicographic
/// order), B_i its complement.
Instance gen_nonexistence_stars(int n);
/// k for the construction above.
int stars_k(int n);
/// Stars to agents 0..n-3, A_0 to agent n-2, B_0 to agent n-1.
Allocation stars_mms_allocation(int n);

/// Three agents, six items: agents 0 and 1 are monotone set functions given by
/// a pair table (singletons 1, three or more items 7), agent 2 is additive with
/// item j worth 101 + j. No PMMS allocation exists.
Instance gen_separation3();

/// Two personalized bivalued agents (a=5,b=1 and a=3,b=1), items 0 and 1 high
/// for both: every Nash-welfare maximizer violates EFX.
Instance gen_mnw_counterexample();

/// Two identical additive agents with item values [0, 0, 2].
Instance gen_pmms_not_efx_example();

/// Four agents, 18 items x, y, z1..z16; a = [5/2, 3, 4, 5], b = 1; x is high
/// for agents 0 and 1, y for agents 2 and 3.
Instance gen_table1_example();

enum class GeneratorKind {
  kNonexistenceStars,
  kSeparation3,
  kMnwCounterexample,
  kPmmsNotEfxExample,
  kTable1Example,
  kRandomBivalued,
  kRandomFactoredBivalued,
  kRandomPairDemand,
  kRandomBinaryMmsFeasible,
  kRandomBinaryAdditive,
};

std::string_view to_string(GeneratorKind kind);
std::optional<GeneratorKind> parse_generator_kind(std::string_view text);

enum class Requirement { kAny, kYes, kNo };

struct GeneratorParams {
  int n = 2;
  int m = 4;
  /// Random bivalued: allow b_i = 0.
  bool allow_zero_b = true;
  /// Upper bound for integer item values in random samplers.
  int max_value = 9;
  /// Random binary tables: monotonicity and v(empty) = 0 requirements.
  Requirement monotone = Requirement::kAny;
  Requirement normalized = Requirement::kYes;
  std::uint64_t rejection_limit = 100'000;
};

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::kSeparation3;
  GeneratorParams params;
  std::uint64_t seed = 0;
};

struct SampleResult {
  Instance instance;
  /// Proposals rejected by the binary MMS-feasibility sampler.
  std::uint64_t rejections = 0;
};

/// Deterministic in (spec, seed). Named constructions ignore the seed; the
/// stars construction reads params.n.
SampleResult sample_random(const GeneratorSpec& spec);

}  // namespace fairdiv
