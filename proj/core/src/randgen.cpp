#include "wsat/randgen.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace wsat {

namespace {

constexpr std::uint64_t kBinomialCap = std::numeric_limits<std::uint64_t>::max();

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  return (a > kBinomialCap - b) ? kBinomialCap : a + b;
}

// Lexicographic rank space over the d-subsets of {1..n}. Rows of the Pascal
// slice C(m, j) for j <= d are precomputed with saturating arithmetic.
class CombinationUnranker {
public:
  CombinationUnranker(int n, int d) : n_(n), d_(d), table_((n + 1) * (d + 1)) {
    for (int m = 0; m <= n; ++m) {
      at(m, 0) = 1;
      for (int j = 1; j <= d; ++j) {
        if (j > m) {
          at(m, j) = 0;
        } else if (j == m) {
          at(m, j) = 1;
        } else {
          at(m, j) = saturating_add(at(m - 1, j - 1), at(m - 1, j));
        }
      }
    }
    if (total() >= kBinomialCap)
      throw std::invalid_argument("C(n, d) overflows the rank space; model too large");
  }

  std::uint64_t total() const { return at(n_, d_); }

  // Combinations with first element v (starting slot s) count C(n-v, s-1);
  // the cumulative count for first elements v0..v telescopes to
  // C(n-v0+1, s) - C(n-v, s), which lets each slot binary-search its value.
  std::vector<int> unrank(std::uint64_t rank) const {
    std::vector<int> subset;
    subset.reserve(d_);
    int lo_start = 1;
    for (int slot = d_; slot >= 1; --slot) {
      const std::uint64_t whole = at(n_ - lo_start + 1, slot);
      int lo = lo_start, hi = n_ - slot + 1;
      while (lo < hi) {
        const int mid = lo + (hi - lo) / 2;
        const std::uint64_t cum = whole - at(n_ - mid, slot);
        if (cum > rank)
          hi = mid;
        else
          lo = mid + 1;
      }
      rank -= whole - at(n_ - (lo - 1), slot);
      subset.push_back(lo);
      lo_start = lo + 1;
    }
    return subset;
  }

private:
  std::uint64_t& at(int m, int j) { return table_[m * (d_ + 1) + j]; }
  const std::uint64_t& at(int m, int j) const { return table_[m * (d_ + 1) + j]; }

  int n_, d_;
  std::vector<std::uint64_t> table_;
};

} // namespace

std::uint64_t binomial_capped(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  constexpr std::uint64_t cap = std::uint64_t{1} << 63;
  std::uint64_t result = 1;
  for (int i = 1; i <= k; ++i) {
    // result * (n-k+i) / i stays integral at every step
    const std::uint64_t numer = static_cast<std::uint64_t>(n - k + i);
    if (result > (cap - 1) / numer) return cap - 1;
    result = result * numer / static_cast<std::uint64_t>(i);
  }
  return result;
}

CandidateClauseTable CandidateClauseTable::build(int d, int dprime) {
  if (d < 1 || d > 30) throw std::invalid_argument("clause arity out of range");
  if (dprime < 0 || dprime > d)
    throw std::invalid_argument("dprime must lie in [0, d]");
  CandidateClauseTable table;
  table.d = d;
  table.dprime = dprime;
  for (std::uint32_t mask = 0; mask < (1u << d); ++mask)
    if (std::popcount(mask) >= dprime) table.patterns.push_back(mask);
  return table;
}

std::vector<std::vector<int>> sample_hypergraph(const RandomModelParams& params,
                                                SplitMix64& rng) {
  const double p = params.p;
  std::vector<std::vector<int>> edges;
  if (p <= 0.0) return edges;

  const CombinationUnranker unranker(params.n, params.d);
  const std::uint64_t total = unranker.total();

  if (p >= 1.0) {
    for (std::uint64_t r = 0; r < total; ++r) edges.push_back(unranker.unrank(r));
    return edges;
  }

  // Skip-ahead sampling: the gap to the next success is Geometric(p), which
  // reproduces independent per-subset Bernoulli(p) draws in O(#edges) time.
  const double log_q = std::log1p(-p);
  std::uint64_t rank = 0;
  while (true) {
    const double u = rng.next_unit();
    const double skip = std::floor(std::log1p(-u) / log_q);
    if (skip >= static_cast<double>(total)) break; // no further success
    rank += static_cast<std::uint64_t>(skip);
    if (rank >= total) break;
    edges.push_back(unranker.unrank(rank));
    ++rank;
  }
  return edges;
}

Clause sample_clause(std::span<const int> edge, const CandidateClauseTable& table,
                     SplitMix64& rng) {
  if (static_cast<int>(edge.size()) != table.d)
    throw std::invalid_argument("edge size does not match the table's arity");
  const std::uint32_t pattern =
      table.patterns[rng.next_below(static_cast<std::uint64_t>(table.pattern_count()))];
  Clause clause;
  clause.lits.reserve(edge.size());
  for (size_t i = 0; i < edge.size(); ++i)
    clause.lits.push_back(Lit{edge[i], (pattern >> i & 1u) != 0});
  return clause; // edge ascends, so the clause is already canonical
}

Instance generate(const RandomModelParams& params) {
  validate_model_shape(params.n, params.d, params.dprime, params.k);
  if (!(params.p >= 0.0 && params.p <= 1.0))
    throw std::invalid_argument("edge probability p must lie in [0, 1]");

  SplitMix64 rng(params.seed);
  const CandidateClauseTable table =
      CandidateClauseTable::build(params.d, params.dprime);

  Instance instance;
  instance.formula.n = params.n;
  const auto edges = sample_hypergraph(params, rng);
  instance.formula.clauses.reserve(edges.size());
  for (const auto& edge : edges)
    instance.formula.clauses.push_back(sample_clause(edge, table, rng));
  instance.weight_target = params.k;
  instance.params = params;
  return instance;
}

} // namespace wsat
