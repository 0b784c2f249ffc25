#include <doctest.h>

#include <algorithm>
#include <map>

#include "test_util.hpp"
#include "wsat/graph.hpp"

using namespace wsat;
using test::formula_from;

TEST_CASE("residual_graph edges follow co-occurrence") {
  const Formula f = formula_from({{1, -2}, {-2, 3}}, 3);
  const ResidualGraph g = residual_graph(f);
  CHECK(g.vertices == std::vector<int>{1, 2, 3});
  CHECK(g.has_edge(1, 2));
  CHECK(g.has_edge(2, 3));
  CHECK(!g.has_edge(1, 3));
  CHECK(g.edge_count() == 2);
}

TEST_CASE("residual_graph of an empty formula is empty") {
  Formula f;
  f.n = 5;
  const ResidualGraph g = residual_graph(f);
  CHECK(g.vertex_count() == 0);
  CHECK(g.edge_count() == 0);
}

TEST_CASE("a 3-clause induces a triangle") {
  const Formula f = formula_from({{-1, 2, 3}}, 3);
  const ResidualGraph g = residual_graph(f);
  CHECK(g.edge_count() == 3);
  CHECK(g.has_edge(1, 2));
  CHECK(g.has_edge(1, 3));
  CHECK(g.has_edge(2, 3));
}

TEST_CASE("isolated variables stay out of the vertex set") {
  const Formula f = formula_from({{-1, 2}}, 5);
  CHECK(residual_graph(f).vertices == std::vector<int>{1, 2});
}

TEST_CASE("connected components") {
  const Formula f = formula_from({{-1, 2}, {-3, 4}}, 4);
  const auto components = connected_components(residual_graph(f));
  REQUIRE(components.size() == 2);
  CHECK(components[0] == std::vector<int>{1, 2});
  CHECK(components[1] == std::vector<int>{3, 4});

  const Formula path = formula_from({{-1, 2}, {-2, 3}}, 3);
  const auto one = connected_components(residual_graph(path));
  REQUIRE(one.size() == 1);
  CHECK(one[0] == std::vector<int>{1, 2, 3});
}

namespace {

// Second traversal strategy for cross-checking: label propagation over the
// edge list until a fixpoint, then group by label.
std::vector<std::vector<int>> components_by_label_propagation(const ResidualGraph& g) {
  std::map<int, int> label;
  for (int v : g.vertices) label[v] = v;
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < g.vertices.size(); ++i) {
      for (int nbr : g.adjacency[i]) {
        const int a = label[g.vertices[i]], b = label[nbr];
        if (a < b) {
          label[nbr] = a;
          changed = true;
        } else if (b < a) {
          label[g.vertices[i]] = b;
          changed = true;
        }
      }
    }
  }
  std::map<int, std::vector<int>> groups;
  for (int v : g.vertices) groups[label[v]].push_back(v);
  std::vector<std::vector<int>> out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  return out;
}

} // namespace

TEST_CASE("components agree with an independent traversal") {
  SplitMix64 rng(99);
  for (int iter = 0; iter < 60; ++iter) {
    const Instance inst = test::random_instance(rng, 8, 30, 2, 1, 0.3, 2.5, 2);
    const ResidualGraph g = residual_graph(inst.formula);
    CHECK(connected_components(g) == components_by_label_propagation(g));
  }
}

TEST_CASE("induced formula's graph is a subgraph of the induced graph") {
  SplitMix64 rng(100);
  for (int iter = 0; iter < 60; ++iter) {
    const int d = 2 + static_cast<int>(rng.next_below(2));
    const Instance inst = test::random_instance(rng, 8, 20, d, 1, 0.5, 3.0, 2);
    const Formula& f = inst.formula;

    std::vector<int> v;
    for (int var = 1; var <= f.n; ++var)
      if (rng.next_below(2) == 0) v.push_back(var);

    const ResidualGraph small = residual_graph(induced_formula(f, v));
    const ResidualGraph big = residual_graph(f);
    std::vector<char> in_v(static_cast<size_t>(f.n) + 1, 0);
    for (int var : v) in_v[var] = 1;

    for (size_t i = 0; i < small.vertices.size(); ++i) {
      const int u = small.vertices[i];
      CHECK(in_v[u]);
      for (int w : small.adjacency[i]) {
        CHECK(in_v[w]);
        CHECK(big.has_edge(u, w));
      }
    }
  }
}
