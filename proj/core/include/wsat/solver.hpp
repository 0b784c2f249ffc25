#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "wsat/cnf.hpp"

namespace wsat {

/// Proof that a variable is frozen: `bodies` are pairwise disjoint variable
/// sets such that for each body Y the clause (not x) v y_1 v ... v y_j is in
/// the formula with exactly that polarity. With at least k disjoint bodies,
/// setting x TRUE forces more than k variables TRUE, so x must be FALSE in
/// every satisfying assignment of weight k.
struct FrozenWitness {
  int var = 0;
  std::vector<std::vector<int>> bodies;
};

struct FrozenSet {
  std::vector<int> vars; // ascending
  std::vector<FrozenWitness> witnesses;
};

/// Detects frozen variables by grouping clauses whose negated part is exactly
/// {x} and greedily packing their positive bodies in ascending lexicographic
/// order. Sound by the returned witnesses; exact for bodies of size 1 and
/// possibly incomplete for larger ones (greedy packing can miss a packing of
/// size k). Incompleteness only ever adds FAILURE outcomes downstream.
FrozenSet find_k_frozen(const Formula& formula, int k);

/// Generalization used by the dprime > 1 pipeline: x is frozen on the set S
/// when at least k disjoint positive bodies Y exist with the clause whose
/// negated part is exactly S + {x} and positive part Y present in the
/// formula. Setting S TRUE then forces x FALSE at total weight k + |S| or
/// below. find_frozen_on(F, {}, k) coincides with find_k_frozen(F, k).
FrozenSet find_frozen_on(const Formula& formula, std::span<const int> s,
                         int k);

/// Achievable satisfying weights of one component's subformula, with one
/// witness per weight (lexicographically smallest TRUE-set).
struct WeightSet {
  std::vector<int> component;                 // ascending
  std::vector<int> achievable;                // ascending, within [0, kmax]
  std::map<int, std::vector<int>> witnesses;  // weight -> TRUE vars
};

inline constexpr int kEnumerationCap = 25;

/// Brute force over all 2^|component| assignments of the clauses that lie
/// entirely inside `component`. Throws std::invalid_argument when the
/// component exceeds `max_size` (the caller's size gate keeps this from
/// happening in the solve pipelines).
WeightSet component_weight_sets(const Formula& formula,
                                std::span<const int> component, int kmax,
                                int max_size = kEnumerationCap);

/// Picks one weight from every list so the weights sum to `target`, or
/// std::nullopt when impossible. A component may contribute 0 only when 0 is
/// in its list. Stage-wise table with one representative per reachable sum;
/// O(target^2 * lists) time.
std::optional<std::vector<int>> dp_combine(
    const std::vector<std::vector<int>>& lists, int target);

/// Component size bound ceil(multiplier * log2(n)), at least 1. Components
/// above the gate abort the solve with FAILURE; at the default multiplier the
/// per-component enumeration stays within 2^gate <= 2n assignments.
int size_gate(int n, double multiplier = 1.0);

enum class SolveStatus { SAT, UNSAT, FAILURE };

struct SolveStats {
  int frozen = 0;           // frozen variables (max across branches)
  int components = 0;       // non-singleton residual components
  int isolated = 0;         // unassigned variables outside every clause
  int max_component = 0;    // max across branches for the dprime path
  int branches = 0;         // S-branches examined (dprime path)
  int gated_branches = 0;   // branches aborted by the size gate
  double ms_freeze = 0.0;
  double ms_reduce = 0.0;
  double ms_decompose = 0.0;
  double ms_weight_sets = 0.0;
  double ms_dp = 0.0;
  double ms_total = 0.0;
};

struct SolveOutcome {
  SolveStatus status = SolveStatus::FAILURE;
  std::optional<Assignment> witness; // total, set iff SAT
  int effective_target = 0;          // k, or round(k ln n) for the mini form
  SolveStats stats;
};

struct SolveOptions {
  double gate_multiplier = 1.0;
};

/// The base pipeline for formulas whose every clause has a negated literal:
/// freeze at threshold k, REDUCE, decompose the residual graph, gate the
/// component sizes, brute-force per-component weight sets, combine with the
/// dynamic program, and reassemble a verified witness. Unassigned variables
/// outside every residual clause are free and enter the combination step
/// as {0,1} pseudo-components.
SolveOutcome wsat_solve(const Formula& formula, int k,
                        const SolveOptions& options = {});
SolveOutcome wsat_solve(const Instance& instance,
                        const SolveOptions& options = {});

/// Pipeline for the model that forbids clauses with fewer than dprime
/// negated literals. For k >= dprime-1 it tries every (dprime-1)-subset S:
/// condition on S TRUE, freeze on S, REDUCE, and run the component phase at
/// target k-(dprime-1); the first SAT branch wins. UNSAT needs every branch
/// exhausted; a gated branch downgrades UNSAT to FAILURE. For k < dprime-1
/// no solution can contain a full S, so plain enumeration of the C(n,k)
/// TRUE-sets answers directly. dprime = 1 delegates to wsat_solve.
SolveOutcome wsat_solve_dprime(const Formula& formula, int k, int dprime,
                               const SolveOptions& options = {});
SolveOutcome wsat_solve_dprime(const Instance& instance, int dprime,
                               const SolveOptions& options = {});

/// The renormalized variant: same pipeline as wsat_solve but at effective
/// target K = round(k * ln n), which is also the freezing threshold.
SolveOutcome mini_wsat_solve(const Formula& formula, int k,
                             const SolveOptions& options = {});
SolveOutcome mini_wsat_solve(const Instance& instance,
                             const SolveOptions& options = {});

/// Effective target of the mini variant.
int mini_target(int k, int n);

} // namespace wsat
