#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>

#include "wsat/cnf.hpp"

namespace wsat {

/// Thrown when an exhaustive enumeration would exceed its budget. Distinct
/// from UNSAT on purpose: the oracle refuses rather than guessing.
class BudgetError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct OracleResult {
  enum class Status { SAT, UNSAT };
  Status status = Status::UNSAT;
  std::optional<Assignment> witness; // set iff SAT
  std::uint64_t enumerated = 0;      // candidate TRUE-sets examined
};

inline constexpr std::uint64_t kDefaultOracleBudget = 10'000'000;

/// Ground truth by enumeration: walks the k-subsets of {1..n} in
/// lexicographic order as TRUE-sets and returns the first satisfying one.
/// Throws BudgetError when C(n,k) exceeds the budget.
OracleResult oracle_solve(const Formula& formula, int k,
                          std::uint64_t budget = kDefaultOracleBudget);

/// Exact set of achievable satisfying weights in [0, kmax], by enumerating
/// all 2^n assignments. Throws BudgetError when 2^n exceeds the budget.
std::set<int> oracle_weight_set(const Formula& formula, int kmax,
                                std::uint64_t budget = kDefaultOracleBudget);

} // namespace wsat
