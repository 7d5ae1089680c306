#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fanband/graph.hpp"

namespace fanband {

struct TreeDecomposition {
  std::vector<std::vector<int>> bags;  // each sorted
  std::vector<Edge> tree_edges;
  int declared_width = -1;             // -1 when not declared

  int node_count() const { return static_cast<int>(bags.size()); }
  int width() const;
  std::vector<std::vector<int>> tree_adjacency() const;
};

struct DecompositionViolation {
  enum class Kind { BadVertex, NotATree, UncoveredVertex, UncoveredEdge, DisconnectedTrace, WrongWidth };
  Kind kind;
  std::string detail;
};

std::vector<DecompositionViolation> validate_decomposition(const Graph& g, const TreeDecomposition& td);
bool is_valid_decomposition(const Graph& g, const TreeDecomposition& td);

// Greedy min-fill elimination, ties broken by lowest vertex id.
TreeDecomposition minfill_decomposition(const Graph& g);

// Supergraph of h in which every bag of td is a clique.
Graph ttree_complete(const Graph& h, const TreeDecomposition& td);

struct SeparatorResult {
  std::vector<int> nodes;     // chosen tree nodes, in selection order
  std::vector<int> vertices;  // union of the chosen bags restricted to the live subgraph, sorted
};

// Picks at most c-1 tree nodes whose (restricted) bags split h into components
// of weight at most xi(h)/c, by repeatedly cutting a lowest heavy subtree.
SeparatorResult weighted_separator(const Graph& h, const TreeDecomposition& td, const std::vector<std::int64_t>& xi,
                                   std::int64_t c);

}  // namespace fanband
