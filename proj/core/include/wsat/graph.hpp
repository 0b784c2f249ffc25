#pragma once

#include <vector>

#include "wsat/cnf.hpp"

namespace wsat {

/// Graph on the variables that occur in a formula, with an edge between two
/// variables whenever they share a clause (the primal graph of the clause
/// hypergraph). Vertices are sorted ascending; adjacency lists are sorted and
/// parallel to `vertices`.
struct ResidualGraph {
  std::vector<int> vertices;
  std::vector<std::vector<int>> adjacency;

  int vertex_count() const { return static_cast<int>(vertices.size()); }
  int edge_count() const;
  bool has_edge(int u, int v) const;
};

ResidualGraph residual_graph(const Formula& formula);

/// Maximal connected vertex sets. Each component is sorted ascending and the
/// list is ordered by smallest member, so the output is deterministic.
std::vector<std::vector<int>> connected_components(const ResidualGraph& graph);

} // namespace wsat
