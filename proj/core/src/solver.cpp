#include "wsat/solver.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <map>
#include <stdexcept>

#include "wsat/graph.hpp"

namespace wsat {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Greedy disjoint packing over bodies in ascending lexicographic order,
// stopping once `threshold` disjoint bodies are collected.
// `used` is a scratch timestamp array indexed by variable.
bool pack_bodies(const std::vector<std::vector<int>>& bodies, int threshold,
                 std::vector<int>& used, int stamp,
                 std::vector<std::vector<int>>* selected) {
  int found = 0;
  for (const auto& body : bodies) {
    const bool disjoint = std::none_of(body.begin(), body.end(),
                                       [&](int v) { return used[v] == stamp; });
    if (!disjoint) continue;
    for (int v : body) used[v] = stamp;
    if (selected) selected->push_back(body);
    if (++found >= threshold) return true;
  }
  return threshold <= 0;
}

FrozenSet freeze_from_bodies(std::map<int, std::vector<std::vector<int>>>& by_var,
                             int n, int k) {
  FrozenSet frozen;
  std::vector<int> used(static_cast<size_t>(n) + 1, 0);
  int stamp = 0;
  for (auto& [var, bodies] : by_var) {
    std::sort(bodies.begin(), bodies.end());
    FrozenWitness witness;
    witness.var = var;
    if (pack_bodies(bodies, k, used, ++stamp, &witness.bodies)) {
      frozen.vars.push_back(var);
      frozen.witnesses.push_back(std::move(witness));
    }
  }
  return frozen;
}

struct ComponentPhase {
  SolveStatus status = SolveStatus::FAILURE;
  std::vector<int> true_vars; // assembled TRUE variables on SAT
  int components = 0;
  int isolated = 0;
  int max_component = 0;
  double ms_decompose = 0.0;
  double ms_weight_sets = 0.0;
  double ms_dp = 0.0;
};

// Decompose-gate-enumerate-combine over a residual formula. `unassigned`
// lists the variables still free; variables outside every residual clause
// are free to take either value and join the combination step as {0,1}.
ComponentPhase run_component_phase(const Formula& residual,
                                   const std::vector<int>& unassigned,
                                   int target, int gate) {
  ComponentPhase phase;
  auto t0 = Clock::now();

  const ResidualGraph graph = residual_graph(residual);
  const auto components = connected_components(graph);
  phase.components = static_cast<int>(components.size());

  std::vector<char> in_clause(static_cast<size_t>(residual.n) + 1, 0);
  for (int v : graph.vertices) in_clause[v] = 1;
  std::vector<int> isolated;
  for (int v : unassigned)
    if (!in_clause[v]) isolated.push_back(v);
  phase.isolated = static_cast<int>(isolated.size());

  for (const auto& component : components)
    phase.max_component =
        std::max(phase.max_component, static_cast<int>(component.size()));
  phase.ms_decompose = ms_since(t0);

  if (phase.max_component > gate) {
    phase.status = SolveStatus::FAILURE;
    return phase;
  }

  // Merge real and singleton pseudo-components in ascending order of their
  // smallest member so witnesses are reproducible.
  struct Entry {
    const std::vector<int>* component = nullptr; // null for an isolated var
    int var = 0;
  };
  std::vector<Entry> entries;
  entries.reserve(components.size() + isolated.size());
  {
    size_t ci = 0, ii = 0;
    while (ci < components.size() || ii < isolated.size()) {
      const bool take_component =
          ii == isolated.size() ||
          (ci < components.size() && components[ci].front() < isolated[ii]);
      if (take_component)
        entries.push_back(Entry{&components[ci++], 0});
      else
        entries.push_back(Entry{nullptr, isolated[ii++]});
    }
  }

  t0 = Clock::now();
  std::vector<std::vector<int>> lists;
  std::vector<WeightSet> sets(entries.size());
  lists.reserve(entries.size());
  for (size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].component) {
      sets[i] = component_weight_sets(residual, *entries[i].component, target);
      lists.push_back(sets[i].achievable);
    } else {
      lists.push_back(target >= 1 ? std::vector<int>{0, 1} : std::vector<int>{0});
    }
  }
  phase.ms_weight_sets = ms_since(t0);

  t0 = Clock::now();
  const auto selection = dp_combine(lists, target);
  phase.ms_dp = ms_since(t0);

  if (!selection) {
    phase.status = SolveStatus::UNSAT;
    return phase;
  }
  for (size_t i = 0; i < entries.size(); ++i) {
    const int chosen = (*selection)[i];
    if (entries[i].component) {
      const auto& witness = sets[i].witnesses.at(chosen);
      phase.true_vars.insert(phase.true_vars.end(), witness.begin(), witness.end());
    } else if (chosen == 1) {
      phase.true_vars.push_back(entries[i].var);
    }
  }
  phase.status = SolveStatus::SAT;
  return phase;
}

std::vector<int> unassigned_variables(const Assignment& assignment, int n) {
  std::vector<int> vars;
  for (int v = 1; v <= n; ++v)
    if (!assignment.is_assigned(v)) vars.push_back(v);
  return vars;
}

Assignment assemble_witness(int n, const Assignment& fixed_true_part,
                            const std::vector<int>& true_vars) {
  Assignment witness = Assignment::all_false(n);
  for (int v = 1; v <= n; ++v)
    if (fixed_true_part.get(v).value_or(false)) witness.set(v, true);
  for (int v : true_vars) witness.set(v, true);
  return witness;
}

// Shared trunk of the base and mini pipelines: freeze at `threshold`,
// REDUCE, then the component phase at `target` (threshold == target for
// both callers today).
SolveOutcome solve_with_target(const Formula& formula, int target,
                               const SolveOptions& options) {
  const auto start = Clock::now();
  const int n = formula.n;

  SolveOutcome outcome;
  outcome.effective_target = target;

  if (!formula.min_negated(1))
    throw std::invalid_argument(
        "solver requires a negated literal in every clause");

  if (target > n) {
    outcome.status = SolveStatus::UNSAT;
    outcome.stats.ms_total = ms_since(start);
    return outcome;
  }
  if (target == 0) {
    // non-monotone clauses make the all-zero assignment satisfying
    outcome.status = SolveStatus::SAT;
    outcome.witness = Assignment::all_false(n);
    outcome.stats.ms_total = ms_since(start);
    return outcome;
  }

  auto t0 = Clock::now();
  const FrozenSet frozen = find_k_frozen(formula, target);
  outcome.stats.frozen = static_cast<int>(frozen.vars.size());
  outcome.stats.ms_freeze = ms_since(t0);

  t0 = Clock::now();
  const ReduceResult reduced = reduce(formula, frozen.vars);
  outcome.stats.ms_reduce = ms_since(t0);

  const auto unassigned = unassigned_variables(reduced.assignment, n);
  const int gate = size_gate(n, options.gate_multiplier);
  ComponentPhase phase =
      run_component_phase(reduced.residual, unassigned, target, gate);

  outcome.stats.components = phase.components;
  outcome.stats.isolated = phase.isolated;
  outcome.stats.max_component = phase.max_component;
  outcome.stats.ms_decompose = phase.ms_decompose;
  outcome.stats.ms_weight_sets = phase.ms_weight_sets;
  outcome.stats.ms_dp = phase.ms_dp;
  outcome.status = phase.status;

  if (phase.status == SolveStatus::SAT) {
    Assignment witness = assemble_witness(n, Assignment(n), phase.true_vars);
    if (!verify_assignment(formula, witness, target))
      throw std::logic_error("solver assembled a witness that fails verification");
    outcome.witness = std::move(witness);
  }
  outcome.stats.ms_total = ms_since(start);
  return outcome;
}

// Enumeration fallback for k < dprime-1 in the dprime pipeline: no weight-k
// assignment can set a full (dprime-1)-subset TRUE, so the outer loop is
// meaningless and the C(n,k) TRUE-sets are cheaper to try directly. Kept
// separate from the oracle module so the two stay independent checks.
SolveOutcome solve_by_enumeration(const Formula& formula, int k) {
  const auto start = Clock::now();
  SolveOutcome outcome;
  outcome.effective_target = k;
  const int n = formula.n;

  std::vector<int> members(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) members[i] = i + 1;

  Assignment candidate = Assignment::all_false(n);
  for (int v : members) candidate.set(v, true);
  for (;;) {
    if (candidate.satisfies(formula)) {
      outcome.status = SolveStatus::SAT;
      outcome.witness = candidate;
      outcome.stats.ms_total = ms_since(start);
      return outcome;
    }
    if (k == 0) break;
    // advance to the lexicographic successor
    int i = k - 1;
    while (i >= 0 && members[i] == n - (k - 1 - i)) --i;
    if (i < 0) break;
    for (int v : members) candidate.set(v, false);
    ++members[i];
    for (int j = i + 1; j < k; ++j) members[j] = members[j - 1] + 1;
    for (int v : members) candidate.set(v, true);
  }
  outcome.status = SolveStatus::UNSAT;
  outcome.stats.ms_total = ms_since(start);
  return outcome;
}

} // namespace

FrozenSet find_k_frozen(const Formula& formula, int k) {
  // Bodies grouped by the single negated variable of each candidate clause.
  std::map<int, std::vector<std::vector<int>>> by_var;
  for (const Clause& clause : formula.clauses) {
    int neg_var = 0;
    bool single = false;
    std::vector<int> body;
    for (const Lit& lit : clause.lits) {
      if (lit.neg) {
        single = neg_var == 0;
        neg_var = lit.var;
      } else {
        body.push_back(lit.var);
      }
    }
    if (single) by_var[neg_var].push_back(std::move(body));
  }
  return freeze_from_bodies(by_var, formula.n, k);
}

FrozenSet find_frozen_on(const Formula& formula, std::span<const int> s, int k) {
  std::vector<char> in_s(static_cast<size_t>(formula.n) + 1, 0);
  for (int v : s) in_s[v] = 1;
  const int s_size = static_cast<int>(s.size());

  // Candidate clauses have negated part exactly S + {x}; group their
  // positive bodies by x.
  std::map<int, std::vector<std::vector<int>>> by_var;
  for (const Clause& clause : formula.clauses) {
    int extra_neg = 0;
    int s_hits = 0;
    bool ok = true;
    std::vector<int> body;
    for (const Lit& lit : clause.lits) {
      if (lit.neg) {
        if (in_s[lit.var]) {
          ++s_hits;
        } else if (extra_neg == 0) {
          extra_neg = lit.var;
        } else {
          ok = false;
          break;
        }
      } else {
        if (in_s[lit.var]) {
          // an S variable occurring positively means the negated part
          // cannot be exactly S plus x
          ok = false;
          break;
        }
        body.push_back(lit.var);
      }
    }
    if (ok && extra_neg != 0 && s_hits == s_size)
      by_var[extra_neg].push_back(std::move(body));
  }
  return freeze_from_bodies(by_var, formula.n, k);
}

WeightSet component_weight_sets(const Formula& formula,
                                std::span<const int> component, int kmax,
                                int max_size) {
  const int size = static_cast<int>(component.size());
  if (size > max_size)
    throw std::invalid_argument("component of size " + std::to_string(size) +
                                " exceeds the enumeration limit of " +
                                std::to_string(max_size));

  WeightSet ws;
  ws.component.assign(component.begin(), component.end());
  std::sort(ws.component.begin(), ws.component.end());

  std::vector<int> local(static_cast<size_t>(formula.n) + 1, -1);
  for (int i = 0; i < size; ++i) local[ws.component[i]] = i;

  // Clauses entirely inside the component, as local bitmasks.
  struct MaskClause {
    std::uint32_t pos = 0;
    std::uint32_t neg = 0;
  };
  std::vector<MaskClause> masks;
  for (const Clause& clause : formula.clauses) {
    MaskClause mc;
    bool inside = true;
    for (const Lit& lit : clause.lits) {
      const int li = local[lit.var];
      if (li < 0) {
        inside = false;
        break;
      }
      (lit.neg ? mc.neg : mc.pos) |= std::uint32_t{1} << li;
    }
    if (inside) masks.push_back(mc);
  }

  const std::uint32_t full = size == 32 ? ~0u : (std::uint32_t{1} << size) - 1;
  for (std::uint32_t mask = 0;; ++mask) {
    const int weight = std::popcount(mask);
    if (weight <= kmax) {
      const bool sat = std::all_of(masks.begin(), masks.end(),
                                   [&](const MaskClause& mc) {
                                     return (mc.pos & mask) != 0 ||
                                            (mc.neg & ~mask & full) != 0;
                                   });
      if (sat) {
        std::vector<int> true_set;
        for (int i = 0; i < size; ++i)
          if (mask >> i & 1u) true_set.push_back(ws.component[i]);
        auto it = ws.witnesses.find(weight);
        if (it == ws.witnesses.end())
          ws.witnesses.emplace(weight, std::move(true_set));
        else if (true_set < it->second)
          it->second = std::move(true_set); // keep the lex-smallest TRUE-set
      }
    }
    if (mask == full) break;
  }
  for (const auto& [weight, witness] : ws.witnesses) ws.achievable.push_back(weight);
  return ws;
}

std::optional<std::vector<int>> dp_combine(
    const std::vector<std::vector<int>>& lists, int target) {
  if (target < 0) return std::nullopt;
  const int m = static_cast<int>(lists.size());

  // reach[t][a]: lists t..m can contribute exactly a. Stage t is built from
  // stage t+1, one row per stage with at most target+1 entries.
  std::vector<std::vector<char>> reach(
      static_cast<size_t>(m) + 1, std::vector<char>(static_cast<size_t>(target) + 1, 0));
  reach[m][0] = 1;
  for (int t = m - 1; t >= 0; --t) {
    for (int a = 0; a <= target; ++a) {
      for (int b : lists[t]) {
        if (b >= 0 && b <= a && reach[t + 1][a - b]) {
          reach[t][a] = 1;
          break;
        }
      }
    }
  }
  if (!reach[0][target]) return std::nullopt;

  // Deterministic representative: give each component the largest weight the
  // remaining lists still allow, which leans the witness toward
  // low-numbered variables (components are ordered by smallest member).
  std::vector<int> selection(static_cast<size_t>(m));
  int remaining = target;
  for (int t = 0; t < m; ++t) {
    int best = -1;
    for (int b : lists[t])
      if (b >= 0 && b <= remaining && b > best && reach[t + 1][remaining - b])
        best = b;
    selection[t] = best;
    remaining -= best;
  }
  return selection;
}

int size_gate(int n, double multiplier) {
  if (n < 2) return 1;
  const int gate = static_cast<int>(std::ceil(multiplier * std::log2(static_cast<double>(n))));
  return std::max(gate, 1);
}

int mini_target(int k, int n) {
  if (n <= 1) return 0;
  return static_cast<int>(
      std::lround(static_cast<double>(k) * std::log(static_cast<double>(n))));
}

SolveOutcome wsat_solve(const Formula& formula, int k,
                        const SolveOptions& options) {
  if (k < 0) throw std::invalid_argument("weight target must be nonnegative");
  return solve_with_target(formula, k, options);
}

SolveOutcome wsat_solve(const Instance& instance, const SolveOptions& options) {
  if (!instance.weight_target)
    throw std::invalid_argument("instance carries no weight target");
  return wsat_solve(instance.formula, *instance.weight_target, options);
}

SolveOutcome wsat_solve_dprime(const Formula& formula, int k, int dprime,
                               const SolveOptions& options) {
  if (dprime == 1) return wsat_solve(formula, k, options);
  if (dprime < 1) throw std::invalid_argument("dprime must be at least 1");
  if (k < 0) throw std::invalid_argument("weight target must be nonnegative");
  if (!formula.min_negated(dprime))
    throw std::invalid_argument(
        "dprime pipeline requires every clause to carry that many negated literals");

  const auto start = Clock::now();
  const int n = formula.n;
  SolveOutcome outcome;
  outcome.effective_target = k;

  if (k > n) {
    outcome.status = SolveStatus::UNSAT;
    outcome.stats.ms_total = ms_since(start);
    return outcome;
  }

  const int s_size = dprime - 1;
  if (k < s_size) {
    // solutions are too light to contain any full S
    outcome = solve_by_enumeration(formula, k);
    outcome.stats.ms_total = ms_since(start);
    return outcome;
  }

  const int gate = size_gate(n, options.gate_multiplier);
  const int residual_target = k - s_size;
  bool any_gated = false;

  std::vector<int> s(static_cast<size_t>(s_size));
  for (int i = 0; i < s_size; ++i) s[i] = i + 1;

  for (;;) {
    ++outcome.stats.branches;

    Assignment s_true(n);
    for (int v : s) s_true.set(v, true);

    auto t0 = Clock::now();
    const auto conditioned = condition(formula, s_true);
    outcome.stats.ms_reduce += ms_since(t0);

    if (conditioned) {
      t0 = Clock::now();
      const FrozenSet frozen = find_frozen_on(formula, s, k);
      outcome.stats.frozen =
          std::max(outcome.stats.frozen, static_cast<int>(frozen.vars.size()));
      outcome.stats.ms_freeze += ms_since(t0);

      t0 = Clock::now();
      const ReduceResult reduced = reduce(*conditioned, frozen.vars);
      outcome.stats.ms_reduce += ms_since(t0);

      std::vector<int> unassigned;
      for (int v = 1; v <= n; ++v)
        if (!s_true.is_assigned(v) && !reduced.assignment.is_assigned(v))
          unassigned.push_back(v);

      ComponentPhase phase =
          run_component_phase(reduced.residual, unassigned, residual_target, gate);
      outcome.stats.components = std::max(outcome.stats.components, phase.components);
      outcome.stats.isolated = std::max(outcome.stats.isolated, phase.isolated);
      outcome.stats.max_component =
          std::max(outcome.stats.max_component, phase.max_component);
      outcome.stats.ms_decompose += phase.ms_decompose;
      outcome.stats.ms_weight_sets += phase.ms_weight_sets;
      outcome.stats.ms_dp += phase.ms_dp;

      if (phase.status == SolveStatus::SAT) {
        Assignment witness = assemble_witness(n, s_true, phase.true_vars);
        if (!verify_assignment(formula, witness, k))
          throw std::logic_error("dprime pipeline assembled a bad witness");
        outcome.status = SolveStatus::SAT;
        outcome.witness = std::move(witness);
        outcome.stats.ms_total = ms_since(start);
        return outcome; // first SAT branch in canonical S order wins
      }
      if (phase.status == SolveStatus::FAILURE) {
        any_gated = true;
        ++outcome.stats.gated_branches;
      }
    }
    // conflicts exhaust the branch: no solution sets this S fully TRUE

    // next (dprime-1)-subset in lexicographic order
    int i = s_size - 1;
    while (i >= 0 && s[i] == n - (s_size - 1 - i)) --i;
    if (i < 0) break;
    ++s[i];
    for (int j = i + 1; j < s_size; ++j) s[j] = s[j - 1] + 1;
  }

  outcome.status = any_gated ? SolveStatus::FAILURE : SolveStatus::UNSAT;
  outcome.stats.ms_total = ms_since(start);
  return outcome;
}

SolveOutcome wsat_solve_dprime(const Instance& instance, int dprime,
                               const SolveOptions& options) {
  if (!instance.weight_target)
    throw std::invalid_argument("instance carries no weight target");
  return wsat_solve_dprime(instance.formula, *instance.weight_target, dprime,
                           options);
}

SolveOutcome mini_wsat_solve(const Formula& formula, int k,
                             const SolveOptions& options) {
  if (k < 0) throw std::invalid_argument("weight target must be nonnegative");
  const int target = mini_target(k, formula.n);
  return solve_with_target(formula, target, options);
}

SolveOutcome mini_wsat_solve(const Instance& instance,
                             const SolveOptions& options) {
  if (!instance.weight_target)
    throw std::invalid_argument("instance carries no weight target");
  return mini_wsat_solve(instance.formula, *instance.weight_target, options);
}

} // namespace wsat
