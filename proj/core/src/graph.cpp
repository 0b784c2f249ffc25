#include "wsat/graph.hpp"

#include <algorithm>
#include <numeric>

namespace wsat {

int ResidualGraph::edge_count() const {
  size_t twice = 0;
  for (const auto& nbrs : adjacency) twice += nbrs.size();
  return static_cast<int>(twice / 2);
}

bool ResidualGraph::has_edge(int u, int v) const {
  const auto it = std::lower_bound(vertices.begin(), vertices.end(), u);
  if (it == vertices.end() || *it != u) return false;
  const auto& nbrs = adjacency[static_cast<size_t>(it - vertices.begin())];
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

ResidualGraph residual_graph(const Formula& formula) {
  ResidualGraph graph;
  graph.vertices = occurring_variables(formula);

  std::vector<int> index(static_cast<size_t>(formula.n) + 1, -1);
  for (size_t i = 0; i < graph.vertices.size(); ++i)
    index[graph.vertices[i]] = static_cast<int>(i);

  graph.adjacency.resize(graph.vertices.size());
  for (const Clause& clause : formula.clauses) {
    for (size_t i = 0; i < clause.lits.size(); ++i) {
      for (size_t j = i + 1; j < clause.lits.size(); ++j) {
        const int u = clause.lits[i].var;
        const int v = clause.lits[j].var;
        graph.adjacency[index[u]].push_back(v);
        graph.adjacency[index[v]].push_back(u);
      }
    }
  }
  for (auto& nbrs : graph.adjacency) {
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
  }
  return graph;
}

std::vector<std::vector<int>> connected_components(const ResidualGraph& graph) {
  const size_t count = graph.vertices.size();
  std::vector<int> index_of(count);
  std::iota(index_of.begin(), index_of.end(), 0);

  auto to_index = [&](int var) {
    return static_cast<size_t>(
        std::lower_bound(graph.vertices.begin(), graph.vertices.end(), var) -
        graph.vertices.begin());
  };

  std::vector<char> visited(count, 0);
  std::vector<std::vector<int>> components;
  std::vector<size_t> stack;
  for (size_t start = 0; start < count; ++start) {
    if (visited[start]) continue;
    std::vector<int> component;
    stack.push_back(start);
    visited[start] = 1;
    while (!stack.empty()) {
      const size_t at = stack.back();
      stack.pop_back();
      component.push_back(graph.vertices[at]);
      for (int nbr : graph.adjacency[at]) {
        const size_t ni = to_index(nbr);
        if (!visited[ni]) {
          visited[ni] = 1;
          stack.push_back(ni);
        }
      }
    }
    std::sort(component.begin(), component.end());
    components.push_back(std::move(component));
  }
  // vertices ascend, so components already come out ordered by smallest member
  return components;
}

} // namespace wsat
