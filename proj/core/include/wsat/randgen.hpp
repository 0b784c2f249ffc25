#pragma once

#include <cstdint>
#include <vector>

#include "wsat/cnf.hpp"
#include "wsat/params.hpp"
#include "wsat/rng.hpp"

namespace wsat {

/// The admissible sign patterns for one hyperedge: subsets of the d positions
/// to negate with at least dprime negations, listed in increasing bitmask
/// order. pattern_count() is a_d = sum_{j=dprime..d} C(d,j), which is 2^d - 1
/// for dprime = 1.
struct CandidateClauseTable {
  int d = 0;
  int dprime = 0;
  std::vector<std::uint32_t> patterns;

  static CandidateClauseTable build(int d, int dprime);
  int pattern_count() const { return static_cast<int>(patterns.size()); }
};

/// C(n, k) capped at 2^63-1 so callers can budget-check without overflow.
std::uint64_t binomial_capped(int n, int k);

/// The d-subsets of {1..n} drawn independently with probability params.p,
/// in lexicographic order. Uses geometric skips over the lexicographic rank
/// space, so the cost is proportional to the number of edges drawn while the
/// distribution is exactly per-subset Bernoulli(p).
std::vector<std::vector<int>> sample_hypergraph(const RandomModelParams& params,
                                                SplitMix64& rng);

/// Uniform clause over one hyperedge: picks one of the table's sign patterns
/// uniformly and applies it positionally to the (ascending) edge.
Clause sample_clause(std::span<const int> edge, const CandidateClauseTable& table,
                     SplitMix64& rng);

/// Draws a full instance: hypergraph first, then one clause per edge, all
/// from a single splitmix64 stream seeded with params.seed. Bit-for-bit
/// reproducible from the parameters.
Instance generate(const RandomModelParams& params);

} // namespace wsat
