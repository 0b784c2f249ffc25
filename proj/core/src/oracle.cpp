#include "wsat/oracle.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "wsat/randgen.hpp"

namespace wsat {

namespace {

// Clause as a pair of variable bitmasks for mask-based evaluation (n <= 63).
struct MaskClause {
  std::uint64_t pos = 0;
  std::uint64_t neg = 0;
};

std::vector<MaskClause> mask_clauses(const Formula& formula) {
  std::vector<MaskClause> masks;
  masks.reserve(formula.clauses.size());
  for (const Clause& clause : formula.clauses) {
    MaskClause mc;
    for (const Lit& lit : clause.lits) {
      const std::uint64_t bit = std::uint64_t{1} << (lit.var - 1);
      (lit.neg ? mc.neg : mc.pos) |= bit;
    }
    masks.push_back(mc);
  }
  return masks;
}

bool satisfies_all(const std::vector<MaskClause>& masks, std::uint64_t true_set) {
  return std::all_of(masks.begin(), masks.end(), [true_set](const MaskClause& mc) {
    return (mc.pos & true_set) != 0 || (mc.neg & ~true_set) != 0;
  });
}

Assignment assignment_from_mask(int n, std::uint64_t true_set) {
  Assignment a(n);
  for (int v = 1; v <= n; ++v) a.set(v, (true_set >> (v - 1)) & 1u);
  return a;
}

// Advances `members` (ascending k-subset of 1..n) to its lexicographic
// successor; false once the last subset has been visited.
bool next_combination(std::vector<int>& members, int n) {
  const int k = static_cast<int>(members.size());
  for (int i = k - 1; i >= 0; --i) {
    if (members[i] < n - (k - 1 - i)) {
      ++members[i];
      for (int j = i + 1; j < k; ++j) members[j] = members[j - 1] + 1;
      return true;
    }
  }
  return false;
}

} // namespace

OracleResult oracle_solve(const Formula& formula, int k, std::uint64_t budget) {
  const int n = formula.n;
  if (k < 0 || k > n) {
    // no k-subset exists at all
    OracleResult result;
    result.status = OracleResult::Status::UNSAT;
    return result;
  }
  const std::uint64_t candidates = binomial_capped(n, k);
  if (candidates > budget)
    throw BudgetError("oracle refuses: C(" + std::to_string(n) + ", " +
                      std::to_string(k) + ") = " + std::to_string(candidates) +
                      " exceeds the budget of " + std::to_string(budget));

  OracleResult result;
  std::vector<int> members(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) members[i] = i + 1;

  if (n <= 63) {
    const auto masks = mask_clauses(formula);
    bool more = true;
    while (more) {
      std::uint64_t true_set = 0;
      for (int v : members) true_set |= std::uint64_t{1} << (v - 1);
      ++result.enumerated;
      if (satisfies_all(masks, true_set)) {
        result.status = OracleResult::Status::SAT;
        result.witness = assignment_from_mask(n, true_set);
        return result;
      }
      more = k > 0 && next_combination(members, n);
    }
  } else {
    Assignment candidate = Assignment::all_false(n);
    for (int v : members) candidate.set(v, true);
    bool more = true;
    while (more) {
      ++result.enumerated;
      if (candidate.satisfies(formula)) {
        result.status = OracleResult::Status::SAT;
        result.witness = candidate;
        return result;
      }
      for (int v : members) candidate.set(v, false);
      more = k > 0 && next_combination(members, n);
      for (int v : members) candidate.set(v, true);
    }
  }
  result.status = OracleResult::Status::UNSAT;
  return result;
}

std::set<int> oracle_weight_set(const Formula& formula, int kmax,
                                std::uint64_t budget) {
  const int n = formula.n;
  if (n > 62 || (std::uint64_t{1} << n) > budget)
    throw BudgetError("oracle refuses: 2^" + std::to_string(n) +
                      " assignments exceed the budget");
  const auto masks = mask_clauses(formula);
  std::set<int> achievable;
  const std::uint64_t end = std::uint64_t{1} << n;
  for (std::uint64_t true_set = 0; true_set < end; ++true_set) {
    const int weight = std::popcount(true_set);
    if (weight > kmax || achievable.contains(weight)) continue;
    if (satisfies_all(masks, true_set)) achievable.insert(weight);
  }
  return achievable;
}

} // namespace wsat
