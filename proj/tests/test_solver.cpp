#include <doctest.h>

#include <algorithm>
#include <set>

#include "test_util.hpp"
#include "wsat/graph.hpp"
#include "wsat/oracle.hpp"
#include "wsat/solver.hpp"

using namespace wsat;
using test::formula_from;

TEST_CASE("find_k_frozen on hand-built formulas") {
  SUBCASE("two disjoint singleton bodies freeze at k = 2") {
    const Formula f = formula_from({{-1, 2}, {-1, 3}, {-2, 3}}, 3);
    const FrozenSet frozen = find_k_frozen(f, 2);
    CHECK(frozen.vars == std::vector<int>{1});
    REQUIRE(frozen.witnesses.size() == 1);
    CHECK(frozen.witnesses[0].var == 1);
    CHECK(frozen.witnesses[0].bodies ==
          std::vector<std::vector<int>>{{2}, {3}});
  }
  SUBCASE("one body is not enough at k = 2") {
    const Formula f = formula_from({{-1, 2}}, 2);
    CHECK(find_k_frozen(f, 2).vars.empty());
  }
  SUBCASE("overlapping bodies do not count twice") {
    // bodies {a,b} and {b,c} share b; greedy packs only one of them
    const Formula f = formula_from({{-1, 2, 3}, {-1, 3, 4}}, 4);
    CHECK(find_k_frozen(f, 2).vars.empty());
    CHECK(find_k_frozen(f, 1).vars == std::vector<int>{1});
  }
  SUBCASE("clauses with two negated literals are not witnesses") {
    const Formula f = formula_from({{-1, -2}, {-1, -3}}, 3);
    CHECK(find_k_frozen(f, 1).vars.empty());
  }
}

TEST_CASE("frozen witnesses are structurally valid and semantically sound") {
  SplitMix64 rng(4242);
  for (int iter = 0; iter < 120; ++iter) {
    const int d = 2 + static_cast<int>(rng.next_below(2));
    const int k = 1 + static_cast<int>(rng.next_below(3));
    const Instance inst = test::random_instance(rng, 8, 16, d, 1, 0.5, 4.0, k);
    const Formula& f = inst.formula;
    const FrozenSet frozen = find_k_frozen(f, k);

    REQUIRE(frozen.vars.size() == frozen.witnesses.size());
    for (const FrozenWitness& witness : frozen.witnesses) {
      CHECK(static_cast<int>(witness.bodies.size()) >= k);
      std::set<int> used;
      for (const auto& body : witness.bodies) {
        for (int v : body) CHECK(used.insert(v).second); // pairwise disjoint
        Clause expected;
        expected.lits.push_back(neg(witness.var));
        for (int v : body) expected.lits.push_back(pos(v));
        canonicalize(expected);
        CHECK(std::find(f.clauses.begin(), f.clauses.end(), expected) !=
              f.clauses.end());
      }
    }

    // no satisfying weight-k assignment sets a frozen variable TRUE
    for (const std::uint64_t model : test::weight_k_models(f, k))
      for (int v : frozen.vars) CHECK(((model >> (v - 1)) & 1u) == 0);
  }
}

TEST_CASE("find_frozen_on specializes to find_k_frozen at S = {}") {
  SplitMix64 rng(515);
  for (int iter = 0; iter < 40; ++iter) {
    const int k = 1 + static_cast<int>(rng.next_below(3));
    const Instance inst = test::random_instance(rng, 8, 16, 3, 1, 0.5, 3.0, k);
    const FrozenSet a = find_k_frozen(inst.formula, k);
    const FrozenSet b = find_frozen_on(inst.formula, std::vector<int>{}, k);
    CHECK(a.vars == b.vars);
  }
}

TEST_CASE("find_frozen_on hand-built example") {
  // clause (not s) v (not x) v y freezes x on {s} at k = 1
  const Formula f = formula_from({{-1, -2, 3}}, 3);
  const FrozenSet frozen = find_frozen_on(f, std::vector<int>{1}, 1);
  CHECK(frozen.vars == std::vector<int>{2});
  REQUIRE(frozen.witnesses.size() == 1);
  CHECK(frozen.witnesses[0].bodies == std::vector<std::vector<int>>{{3}});
}

TEST_CASE("find_frozen_on soundness against enumeration") {
  SplitMix64 rng(616);
  for (int iter = 0; iter < 60; ++iter) {
    const int k = 1 + static_cast<int>(rng.next_below(2));
    const Instance inst = test::random_instance(rng, 8, 14, 3, 2, 1.0, 4.0, k);
    const Formula& f = inst.formula;
    const int s_var = 1 + static_cast<int>(rng.next_below(f.n));
    const std::vector<int> s{s_var};
    const FrozenSet frozen = find_frozen_on(f, s, k);

    // no satisfying assignment of weight k + |S| sets all of S and x TRUE
    for (const std::uint64_t model : test::weight_k_models(f, k + 1)) {
      if (((model >> (s_var - 1)) & 1u) == 0) continue;
      for (int x : frozen.vars) CHECK(((model >> (x - 1)) & 1u) == 0);
    }
  }
}

TEST_CASE("component_weight_sets") {
  SUBCASE("implication over two variables") {
    const Formula f = formula_from({{-1, 2}}, 2);
    const WeightSet ws = component_weight_sets(f, std::vector<int>{1, 2}, 2);
    CHECK(ws.achievable == std::vector<int>{0, 1, 2});
    CHECK(ws.witnesses.at(0).empty());
    CHECK(ws.witnesses.at(1) == std::vector<int>{2});
    CHECK(ws.witnesses.at(2) == std::vector<int>{1, 2});
  }
  SUBCASE("negative unit pins the variable") {
    const Formula f = formula_from({{-1}}, 1);
    const WeightSet ws = component_weight_sets(f, std::vector<int>{1}, 1);
    CHECK(ws.achievable == std::vector<int>{0});
  }
  SUBCASE("kmax truncates") {
    Formula f;
    f.n = 3;
    const WeightSet ws = component_weight_sets(f, std::vector<int>{1, 2, 3}, 1);
    CHECK(ws.achievable == std::vector<int>{0, 1});
  }
  SUBCASE("size limit is a contract violation") {
    Formula f;
    f.n = 30;
    std::vector<int> component(30);
    for (int i = 0; i < 30; ++i) component[i] = i + 1;
    CHECK_THROWS_AS(component_weight_sets(f, component, 2),
                    std::invalid_argument);
  }
}

TEST_CASE("zero stays achievable after reduce in the base pipeline") {
  SplitMix64 rng(717);
  for (int iter = 0; iter < 50; ++iter) {
    const int k = 1 + static_cast<int>(rng.next_below(3));
    const Instance inst = test::random_instance(rng, 8, 18, 2, 1, 0.5, 3.0, k);
    const FrozenSet frozen = find_k_frozen(inst.formula, k);
    const ReduceResult reduced = reduce(inst.formula, frozen.vars);
    for (const auto& component :
         connected_components(residual_graph(reduced.residual))) {
      if (component.size() > 10) continue;
      const WeightSet ws = component_weight_sets(reduced.residual, component, k);
      REQUIRE(!ws.achievable.empty());
      CHECK(ws.achievable.front() == 0);
    }
  }
}

namespace {

bool enumeration_achieves(const std::vector<std::vector<int>>& lists, int target) {
  // odometer over the index tuple
  std::vector<size_t> idx(lists.size(), 0);
  for (const auto& list : lists)
    if (list.empty()) return false;
  for (;;) {
    int sum = 0;
    for (size_t i = 0; i < lists.size(); ++i) sum += lists[i][idx[i]];
    if (sum == target) return true;
    size_t at = 0;
    while (at < lists.size() && ++idx[at] == lists[at].size()) idx[at++] = 0;
    if (at == lists.size()) return false;
  }
}

} // namespace

TEST_CASE("dp_combine examples") {
  const std::vector<std::vector<int>> lists{{0, 2}, {0, 1}, {0, 3}};
  const auto selection = dp_combine(lists, 3);
  REQUIRE(selection);
  CHECK(selection->size() == 3);
  int sum = 0;
  for (size_t i = 0; i < 3; ++i) {
    sum += (*selection)[i];
    CHECK(std::find(lists[i].begin(), lists[i].end(), (*selection)[i]) !=
          lists[i].end());
  }
  CHECK(sum == 3);

  CHECK(!dp_combine(lists, 7)); // maximum reachable sum is 6
  CHECK(dp_combine({{1}}, 1) == std::vector<int>{1});
  CHECK(!dp_combine({{1}}, 0)); // forced contribution
  CHECK(!dp_combine({{0, 2}, {}}, 2)); // empty list kills the branch
  CHECK(dp_combine({}, 0) == std::vector<int>{});
  CHECK(!dp_combine({}, 1));
}

TEST_CASE("dp_combine agrees with enumeration on random lists") {
  SplitMix64 rng(818);
  for (int iter = 0; iter < 800; ++iter) {
    const int m = 1 + static_cast<int>(rng.next_below(6));
    const int target = static_cast<int>(rng.next_below(7));
    std::vector<std::vector<int>> lists(m);
    for (auto& list : lists)
      for (int v = 0; v <= 6; ++v)
        if (rng.next_below(2)) list.push_back(v);

    const auto selection = dp_combine(lists, target);
    CHECK(selection.has_value() == enumeration_achieves(lists, target));
    if (selection) {
      int sum = 0;
      for (int i = 0; i < m; ++i) {
        sum += (*selection)[i];
        CHECK(std::find(lists[i].begin(), lists[i].end(), (*selection)[i]) !=
              lists[i].end());
      }
      CHECK(sum == target);
    }
  }
}

TEST_CASE("size_gate") {
  CHECK(size_gate(1024) == 10);
  CHECK(size_gate(1000) == 10);
  CHECK(size_gate(2) == 1);
  CHECK(size_gate(1024, 1.5) == 15);
  for (int n = 2; n <= 10000; n = n * 3 / 2 + 1) {
    const int gate = size_gate(n);
    CHECK((std::uint64_t{1} << gate) <= 2ull * static_cast<std::uint64_t>(n));
  }
}

TEST_CASE("wsat_solve edge cases") {
  const Formula f = formula_from({{-1, 2}, {-2, 3}}, 3);
  SUBCASE("k = 0 answers SAT with the all-zero witness") {
    const SolveOutcome outcome = wsat_solve(f, 0);
    REQUIRE(outcome.status == SolveStatus::SAT);
    CHECK(outcome.witness->weight() == 0);
  }
  SUBCASE("k > n answers UNSAT") {
    CHECK(wsat_solve(f, 4).status == SolveStatus::UNSAT);
  }
  SUBCASE("monotone clauses violate the contract") {
    CHECK_THROWS_AS(wsat_solve(formula_from({{1, 2}}, 2), 1),
                    std::invalid_argument);
  }
}

TEST_CASE("wsat_solve on the frozen-implication example") {
  const Formula f = formula_from({{-1, 2}, {-1, 3}}, 6);
  const SolveOutcome outcome = wsat_solve(f, 1);
  REQUIRE(outcome.status == SolveStatus::SAT);
  CHECK(verify_assignment(f, *outcome.witness, 1));
  CHECK(outcome.witness->true_vars() == std::vector<int>{2});
  CHECK(outcome.stats.frozen == 1);
}

TEST_CASE("wsat_solve agrees with the oracle on random instances") {
  SplitMix64 rng(910);
  const double cs[] = {0.5, 1.0, 2.0, 4.0};
  int decided = 0;
  for (int iter = 0; iter < 500; ++iter) {
    const Instance inst = generate(params_with_c(24, 2, 1, 3, cs[iter % 4],
                                                 mix_seed(910, iter)));
    const SolveOutcome outcome = wsat_solve(inst.formula, 3);
    if (outcome.status == SolveStatus::FAILURE) continue;
    ++decided;
    const OracleResult truth = oracle_solve(inst.formula, 3);
    CHECK((outcome.status == SolveStatus::SAT) ==
          (truth.status == OracleResult::Status::SAT));
    if (outcome.witness) CHECK(verify_assignment(inst.formula, *outcome.witness, 3));
  }
  CHECK(decided > 100);
}

TEST_CASE("solving is deterministic") {
  const Instance inst = generate(params_with_c(60, 2, 1, 2, 1.0, 5150));
  const SolveOutcome a = wsat_solve(inst.formula, 2);
  const SolveOutcome b = wsat_solve(inst.formula, 2);
  CHECK(a.status == b.status);
  CHECK(a.witness == b.witness);
}

TEST_CASE("wsat_solve_dprime on the three-variable example") {
  const Formula f = formula_from({{-1, -2, 3}}, 3);
  const SolveOutcome outcome = wsat_solve_dprime(f, 2, 2);
  REQUIRE(outcome.status == SolveStatus::SAT);
  CHECK(verify_assignment(f, *outcome.witness, 2));
}

TEST_CASE("wsat_solve_dprime delegates at dprime = 1") {
  const Formula f = formula_from({{-1, 2}, {-2, 3}}, 3);
  const SolveOutcome a = wsat_solve_dprime(f, 1, 1);
  const SolveOutcome b = wsat_solve(f, 1);
  CHECK(a.status == b.status);
  CHECK(a.witness == b.witness);
}

TEST_CASE("wsat_solve_dprime agrees with the oracle") {
  SplitMix64 rng(911);
  const double cs[] = {0.5, 1.5, 3.0, 5.0};
  int decided = 0;
  for (int iter = 0; iter < 200; ++iter) {
    const int k = 1 + iter % 3;
    const Instance inst = generate(params_with_c(14, 3, 2, k, cs[iter % 4],
                                                 mix_seed(911, iter)));
    const SolveOutcome outcome = wsat_solve_dprime(inst.formula, k, 2);
    if (outcome.status == SolveStatus::FAILURE) continue;
    ++decided;
    CHECK((outcome.status == SolveStatus::SAT) ==
          test::weight_k_satisfiable(inst.formula, k));
    if (outcome.witness) CHECK(verify_assignment(inst.formula, *outcome.witness, k));
  }
  CHECK(decided > 60);
}

TEST_CASE("wsat_solve_dprime handles d = 4, dprime = 3") {
  int decided = 0;
  for (int iter = 0; iter < 100; ++iter) {
    const int k = 2 + iter % 2;
    const double p = 0.2 + 0.4 * (iter % 2);
    const Instance inst = generate(params_with_p(12, 4, 3, k, p, mix_seed(914, iter)));
    const SolveOutcome outcome = wsat_solve_dprime(inst.formula, k, 3);
    if (outcome.status == SolveStatus::FAILURE) continue;
    ++decided;
    CHECK((outcome.status == SolveStatus::SAT) ==
          test::weight_k_satisfiable(inst.formula, k));
    if (outcome.witness) CHECK(verify_assignment(inst.formula, *outcome.witness, k));
  }
  CHECK(decided > 30);
}

TEST_CASE("wsat_solve_dprime falls back to enumeration when k < dprime - 1") {
  for (int iter = 0; iter < 60; ++iter) {
    const double p = 0.05 + 0.05 * (iter % 4);
    const Instance inst = generate(params_with_p(12, 3, 3, 1, p,
                                                 mix_seed(912, iter)));
    const SolveOutcome outcome = wsat_solve_dprime(inst.formula, 1, 3);
    CHECK(outcome.status != SolveStatus::FAILURE);
    CHECK((outcome.status == SolveStatus::SAT) ==
          test::weight_k_satisfiable(inst.formula, 1));
    if (outcome.witness) CHECK(verify_assignment(inst.formula, *outcome.witness, 1));
  }
}

TEST_CASE("mini target arithmetic") {
  CHECK(mini_target(1, 20) == 3);
  CHECK(mini_target(2, 20) == 6);
  CHECK(mini_target(1, 3) >= 1);
  CHECK(mini_target(0, 100) == 0);
}

TEST_CASE("targets beyond n are UNSAT") {
  const Formula f = formula_from({{-1, 2}}, 20);
  CHECK(mini_wsat_solve(f, 10).status == SolveStatus::UNSAT); // round(10 ln 20) = 30
  const Formula g = formula_from({{-1, -2}}, 20);
  CHECK(wsat_solve_dprime(g, 25, 2).status == SolveStatus::UNSAT);
}

TEST_CASE("mini_wsat_solve agrees with the oracle at the scaled target") {
  for (int iter = 0; iter < 60; ++iter) {
    const Instance inst = generate(params_with_p(20, 2, 1, 1, 1.0, mix_seed(913, iter)));
    const SolveOutcome outcome = mini_wsat_solve(inst.formula, 1);
    CHECK(outcome.effective_target == 3);
    if (outcome.status == SolveStatus::FAILURE) continue;
    const OracleResult truth = oracle_solve(inst.formula, 3);
    CHECK((outcome.status == SolveStatus::SAT) ==
          (truth.status == OracleResult::Status::SAT));
    if (outcome.witness) CHECK(verify_assignment(inst.formula, *outcome.witness, 3));
  }
}
