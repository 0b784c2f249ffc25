#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include "wsat/params.hpp"

namespace wsat {

/// A literal over a 1-based variable index.
struct Lit {
  int var = 0;
  bool neg = false;

  friend constexpr bool operator==(const Lit&, const Lit&) = default;
  friend constexpr auto operator<=>(const Lit&, const Lit&) = default;

  /// DIMACS encoding: -3 means the negation of variable 3.
  static constexpr Lit from_dimacs(int code) {
    return Lit{code < 0 ? -code : code, code < 0};
  }
  constexpr int to_dimacs() const { return neg ? -var : var; }
};

constexpr Lit pos(int var) { return Lit{var, false}; }
constexpr Lit neg(int var) { return Lit{var, true}; }

/// A disjunction of literals over distinct variables, stored sorted by
/// variable index so equality is structural.
struct Clause {
  std::vector<Lit> lits;

  bool operator==(const Clause&) const = default;
  auto operator<=>(const Clause&) const = default;

  int size() const { return static_cast<int>(lits.size()); }
  int negated_count() const;
  bool contains_var(int var) const;
};

/// Builds a canonical clause from DIMACS-encoded literals. Throws
/// std::invalid_argument on a zero literal or a repeated variable.
Clause clause_from_dimacs(std::span<const int> dimacs_lits);
Clause clause_from_dimacs(std::initializer_list<int> dimacs_lits);

/// Sorts literals by variable index; throws on repeated variables.
void canonicalize(Clause& clause);

/// A CNF formula over variables 1..n.
struct Formula {
  int n = 0;
  std::vector<Clause> clauses;

  bool operator==(const Formula&) const = default;

  int clause_count() const { return static_cast<int>(clauses.size()); }
  /// True when every clause has at least `dprime` negated literals.
  bool min_negated(int dprime) const;
};

/// Variables of 1..n that appear in at least one clause, ascending.
std::vector<int> occurring_variables(const Formula& formula);

/// A partial or total map from variables 1..n to TRUE/FALSE. The weight is
/// the number of variables set TRUE.
class Assignment {
public:
  Assignment() = default;
  explicit Assignment(int n) : values_(static_cast<size_t>(n) + 1, kFree) {}

  static Assignment all_false(int n);

  int size() const { return static_cast<int>(values_.size()) - 1; }
  int assigned_count() const { return assigned_; }
  bool is_total() const { return assigned_ == size(); }
  int weight() const { return weight_; }

  bool is_assigned(int var) const { return values_[var] != kFree; }
  std::optional<bool> get(int var) const;
  /// Value of an assigned variable; undefined for unassigned ones.
  bool value(int var) const { return values_[var] == 1; }

  void set(int var, bool value);
  void unset(int var);

  bool satisfies(const Clause& clause) const;
  bool satisfies(const Formula& formula) const;

  /// Variables set TRUE, ascending.
  std::vector<int> true_vars() const;

  bool operator==(const Assignment&) const = default;

private:
  static constexpr std::int8_t kFree = -1;
  std::vector<std::int8_t> values_; // index 0 unused
  int assigned_ = 0;
  int weight_ = 0;
};

/// A formula together with the weight target and, when the instance came out
/// of the random generator, the parameters that produced it.
struct Instance {
  Formula formula;
  std::optional<int> weight_target;
  std::optional<RandomModelParams> params;

  bool operator==(const Instance&) const = default;
};

/// True iff `assignment` is total, satisfies every clause, and has weight
/// exactly k. Throws std::invalid_argument when the assignment is partial or
/// sized differently from the formula.
bool verify_assignment(const Formula& formula, const Assignment& assignment,
                       int k);

/// Restriction of `formula` to the variable set `vars`: clauses entirely over
/// `vars` are kept as they are; clauses that lose literals to the complement
/// are kept only if at least 2 literals remain. Duplicates arising from the
/// shortening are removed (first occurrence wins).
Formula induced_formula(const Formula& formula, std::span<const int> vars);

/// Applies a partial assignment without propagation: satisfied clauses are
/// dropped, falsified literals are deleted. Returns std::nullopt when a
/// clause becomes empty (conflict).
std::optional<Formula> condition(const Formula& formula,
                                 const Assignment& partial);

struct ReduceResult {
  Formula residual;
  Assignment assignment; // everything it assigns is FALSE
};

/// Sets every variable in `false_vars` to FALSE and runs unit propagation to
/// a fixpoint. Requires every clause to contain a negated literal; clauses
/// then never lose their negated literals short of being satisfied, so a unit
/// clause is always a single negated literal and propagation only ever forces
/// more FALSE values. Throws std::invalid_argument if a clause has no negated
/// literal and std::logic_error if a clause still becomes empty.
ReduceResult reduce(const Formula& formula, std::span<const int> false_vars);

} // namespace wsat
