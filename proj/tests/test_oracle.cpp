#include <doctest.h>

#include <algorithm>

#include "test_util.hpp"
#include "wsat/graph.hpp"
#include "wsat/oracle.hpp"
#include "wsat/solver.hpp"

using namespace wsat;
using test::formula_from;

TEST_CASE("oracle_solve basics") {
  const Formula sat = formula_from({{-1, 2}}, 2);
  const OracleResult r = oracle_solve(sat, 1);
  REQUIRE(r.status == OracleResult::Status::SAT);
  REQUIRE(r.witness);
  CHECK(r.witness->true_vars() == std::vector<int>{2});
  CHECK(verify_assignment(sat, *r.witness, 1));

  const Formula unsat = formula_from({{-1}, {-2}}, 2);
  CHECK(oracle_solve(unsat, 1).status == OracleResult::Status::UNSAT);

  // out-of-range targets have no candidates at all
  CHECK(oracle_solve(sat, 5).status == OracleResult::Status::UNSAT);
}

TEST_CASE("oracle refuses over budget") {
  Formula f;
  f.n = 40;
  CHECK_THROWS_AS(oracle_solve(f, 20), BudgetError);
  CHECK_THROWS_AS(oracle_weight_set(f, 3), BudgetError);
  CHECK_NOTHROW(oracle_solve(f, 2));
}

TEST_CASE("oracle_weight_set basics") {
  const std::set<int> ws = oracle_weight_set(formula_from({{-1, 2}}, 2), 2);
  CHECK(ws == std::set<int>{0, 1, 2});
  CHECK(oracle_weight_set(formula_from({{-1}}, 1), 1) == std::set<int>{0});
}

TEST_CASE("the two oracle routes agree on random instances") {
  SplitMix64 rng(314159);
  for (int iter = 0; iter < 300; ++iter) {
    const int d = 2 + static_cast<int>(rng.next_below(2));
    const int k = static_cast<int>(rng.next_below(5));
    const Instance inst = test::random_instance(rng, 6, 16, d, 1, 0.3, 4.0, k);
    const Formula& f = inst.formula;

    const OracleResult r = oracle_solve(f, k);
    CHECK((r.status == OracleResult::Status::SAT) ==
          test::weight_k_satisfiable(f, k));
    if (r.witness) CHECK(verify_assignment(f, *r.witness, k));
  }
}

TEST_CASE("oracle_solve matches membership in oracle_weight_set") {
  SplitMix64 rng(8888);
  for (int iter = 0; iter < 80; ++iter) {
    const Instance inst = test::random_instance(rng, 5, 12, 2, 1, 0.5, 3.0, 0);
    const Formula& f = inst.formula;
    for (int k = 0; k <= 4 && k <= f.n; ++k) {
      const bool sat = oracle_solve(f, k).status == OracleResult::Status::SAT;
      CHECK(sat == oracle_weight_set(f, k).contains(k));
    }
  }
}

TEST_CASE("oracle weight sets match component enumeration after reduce") {
  SplitMix64 rng(1618);
  int checked = 0;
  for (int iter = 0; iter < 100; ++iter) {
    const int k = 1 + static_cast<int>(rng.next_below(3));
    const Instance inst = test::random_instance(rng, 8, 16, 2, 1, 0.5, 2.5, k);
    const FrozenSet frozen = find_k_frozen(inst.formula, k);
    const ReduceResult reduced = reduce(inst.formula, frozen.vars);

    for (const auto& component :
         connected_components(residual_graph(reduced.residual))) {
      if (component.size() > 14) continue;
      Formula sub;
      sub.n = reduced.residual.n;
      for (const Clause& clause : reduced.residual.clauses) {
        const bool inside = std::all_of(
            clause.lits.begin(), clause.lits.end(), [&](const Lit& lit) {
              return std::binary_search(component.begin(), component.end(),
                                        lit.var);
            });
        if (inside) sub.clauses.push_back(clause);
      }
      // project to the component's variables only
      Formula proj;
      proj.n = static_cast<int>(component.size());
      for (const Clause& clause : sub.clauses) {
        Clause local;
        for (const Lit& lit : clause.lits) {
          const int idx = static_cast<int>(
              std::lower_bound(component.begin(), component.end(), lit.var) -
              component.begin());
          local.lits.push_back(Lit{idx + 1, lit.neg});
        }
        proj.clauses.push_back(local);
      }
      const auto expected = oracle_weight_set(proj, k);
      const WeightSet ws = component_weight_sets(reduced.residual, component, k);
      const std::set<int> actual(ws.achievable.begin(), ws.achievable.end());
      CHECK(actual == expected);
      ++checked;
    }
  }
  CHECK(checked > 50);
}
