#include "wsat/cnf.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace wsat {

namespace {

// FNV-1a over the literal stream; clauses are canonical, so structural
// equality matches hash equality requirements.
struct ClauseHash {
  size_t operator()(const Clause& clause) const {
    std::uint64_t h = 1469598103934665603ull;
    for (const Lit& lit : clause.lits) {
      h ^= static_cast<std::uint64_t>(lit.to_dimacs());
      h *= 1099511628211ull;
    }
    return static_cast<size_t>(h);
  }
};

void remove_duplicate_clauses(std::vector<Clause>& clauses) {
  std::unordered_set<Clause, ClauseHash> seen;
  seen.reserve(clauses.size() * 2);
  std::erase_if(clauses, [&](const Clause& c) { return !seen.insert(c).second; });
}

} // namespace

int Clause::negated_count() const {
  return static_cast<int>(std::count_if(lits.begin(), lits.end(),
                                        [](const Lit& l) { return l.neg; }));
}

bool Clause::contains_var(int var) const {
  return std::any_of(lits.begin(), lits.end(),
                     [var](const Lit& l) { return l.var == var; });
}

void canonicalize(Clause& clause) {
  std::sort(clause.lits.begin(), clause.lits.end(),
            [](const Lit& a, const Lit& b) { return a.var < b.var; });
  for (size_t i = 1; i < clause.lits.size(); ++i) {
    if (clause.lits[i].var == clause.lits[i - 1].var)
      throw std::invalid_argument("variable " + std::to_string(clause.lits[i].var) +
                                  " repeats within a clause");
  }
}

Clause clause_from_dimacs(std::span<const int> dimacs_lits) {
  Clause clause;
  clause.lits.reserve(dimacs_lits.size());
  for (int code : dimacs_lits) {
    if (code == 0) throw std::invalid_argument("literal 0 inside a clause");
    clause.lits.push_back(Lit::from_dimacs(code));
  }
  canonicalize(clause);
  return clause;
}

Clause clause_from_dimacs(std::initializer_list<int> dimacs_lits) {
  return clause_from_dimacs(std::span<const int>(dimacs_lits.begin(), dimacs_lits.size()));
}

bool Formula::min_negated(int dprime) const {
  return std::all_of(clauses.begin(), clauses.end(), [dprime](const Clause& c) {
    return c.negated_count() >= dprime;
  });
}

std::vector<int> occurring_variables(const Formula& formula) {
  std::vector<char> seen(static_cast<size_t>(formula.n) + 1, 0);
  for (const Clause& clause : formula.clauses)
    for (const Lit& lit : clause.lits) seen[lit.var] = 1;
  std::vector<int> vars;
  for (int v = 1; v <= formula.n; ++v)
    if (seen[v]) vars.push_back(v);
  return vars;
}

Assignment Assignment::all_false(int n) {
  Assignment a(n);
  for (int v = 1; v <= n; ++v) a.set(v, false);
  return a;
}

std::optional<bool> Assignment::get(int var) const {
  if (values_[var] == kFree) return std::nullopt;
  return values_[var] == 1;
}

void Assignment::set(int var, bool value) {
  std::int8_t& slot = values_[var];
  if (slot != kFree) {
    weight_ -= slot;
    --assigned_;
  }
  slot = value ? 1 : 0;
  weight_ += slot;
  ++assigned_;
}

void Assignment::unset(int var) {
  std::int8_t& slot = values_[var];
  if (slot == kFree) return;
  weight_ -= slot;
  --assigned_;
  slot = kFree;
}

bool Assignment::satisfies(const Clause& clause) const {
  for (const Lit& lit : clause.lits) {
    const std::int8_t v = values_[lit.var];
    if (v == kFree) continue;
    if ((v == 1) != lit.neg) return true;
  }
  return false;
}

bool Assignment::satisfies(const Formula& formula) const {
  return std::all_of(formula.clauses.begin(), formula.clauses.end(),
                     [this](const Clause& c) { return satisfies(c); });
}

std::vector<int> Assignment::true_vars() const {
  std::vector<int> vars;
  for (int v = 1; v <= size(); ++v)
    if (values_[v] == 1) vars.push_back(v);
  return vars;
}

bool verify_assignment(const Formula& formula, const Assignment& assignment,
                       int k) {
  if (assignment.size() != formula.n)
    throw std::invalid_argument("assignment covers a different variable range");
  if (!assignment.is_total())
    throw std::invalid_argument("assignment is partial; verification needs a total one");
  if (assignment.weight() != k) return false;
  return assignment.satisfies(formula);
}

Formula induced_formula(const Formula& formula, std::span<const int> vars) {
  std::vector<char> keep(static_cast<size_t>(formula.n) + 1, 0);
  for (int v : vars) keep[v] = 1;

  Formula result;
  result.n = formula.n;
  for (const Clause& clause : formula.clauses) {
    Clause shortened;
    for (const Lit& lit : clause.lits)
      if (keep[lit.var]) shortened.lits.push_back(lit);
    if (shortened.size() == clause.size())
      result.clauses.push_back(clause); // entirely inside vars
    else if (shortened.size() >= 2)
      result.clauses.push_back(std::move(shortened));
  }
  remove_duplicate_clauses(result.clauses);
  return result;
}

std::optional<Formula> condition(const Formula& formula,
                                 const Assignment& partial) {
  Formula result;
  result.n = formula.n;
  for (const Clause& clause : formula.clauses) {
    Clause rest;
    bool satisfied = false;
    for (const Lit& lit : clause.lits) {
      const auto value = partial.get(lit.var);
      if (!value) {
        rest.lits.push_back(lit);
      } else if (*value != lit.neg) {
        satisfied = true;
        break;
      }
      // falsified literal: dropped
    }
    if (satisfied) continue;
    if (rest.lits.empty()) return std::nullopt; // conflict
    result.clauses.push_back(std::move(rest));
  }
  remove_duplicate_clauses(result.clauses);
  return result;
}

ReduceResult reduce(const Formula& formula, std::span<const int> false_vars) {
  if (!formula.min_negated(1))
    throw std::invalid_argument("reduce requires a negated literal in every clause");

  const int n = formula.n;
  Assignment assignment(n);

  // Occurrence lists and live-literal counts. Satisfied clauses are retired;
  // surviving clauses only ever lose positive literals.
  const int m = formula.clause_count();
  std::vector<std::vector<int>> pos_occ(static_cast<size_t>(n) + 1);
  std::vector<std::vector<int>> neg_occ(static_cast<size_t>(n) + 1);
  std::vector<int> live(m);
  std::vector<char> retired(m, 0);
  for (int ci = 0; ci < m; ++ci) {
    const Clause& clause = formula.clauses[ci];
    live[ci] = clause.size();
    for (const Lit& lit : clause.lits)
      (lit.neg ? neg_occ : pos_occ)[lit.var].push_back(ci);
  }

  std::vector<int> queue;
  for (int v : false_vars) {
    if (v < 1 || v > n)
      throw std::invalid_argument("reduce: variable index out of range");
    if (!assignment.is_assigned(v)) {
      assignment.set(v, false);
      queue.push_back(v);
    }
  }

  auto force_false = [&](int v) {
    if (assignment.is_assigned(v)) return;
    assignment.set(v, false);
    queue.push_back(v);
  };

  while (!queue.empty()) {
    const int v = queue.back();
    queue.pop_back();
    for (int ci : neg_occ[v]) retired[ci] = 1; // (not v) satisfied
    for (int ci : pos_occ[v]) {
      if (retired[ci]) continue;
      if (--live[ci] == 0)
        throw std::logic_error("reduce produced an empty clause");
      if (live[ci] == 1) {
        // The survivor must be a negated literal: negated literals are only
        // ever removed by retiring the whole clause.
        for (const Lit& lit : formula.clauses[ci].lits) {
          if (!assignment.is_assigned(lit.var)) {
            if (!lit.neg)
              throw std::logic_error("reduce met a positive unit clause");
            retired[ci] = 1;
            force_false(lit.var);
            break;
          }
        }
      }
    }
  }

  ReduceResult result;
  result.assignment = std::move(assignment);
  result.residual.n = n;
  for (int ci = 0; ci < m; ++ci) {
    if (retired[ci]) continue;
    const Clause& clause = formula.clauses[ci];
    Clause rest;
    for (const Lit& lit : clause.lits)
      if (!result.assignment.is_assigned(lit.var)) rest.lits.push_back(lit);
    result.residual.clauses.push_back(std::move(rest));
  }
  remove_duplicate_clauses(result.residual.clauses);
  return result;
}

} // namespace wsat
