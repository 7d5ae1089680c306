#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "fanband/distance.hpp"

namespace fanband {

using Edge = std::pair<int, int>;

// Immutable simple undirected graph on vertices 0..n-1 with sorted adjacency.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);
  // Throws InputError on self-loops, duplicate edges or out-of-range ids.
  Graph(int n, std::span<const Edge> edges);

  int vertex_count() const { return static_cast<int>(adj_.size()); }
  std::int64_t edge_count() const { return m_; }
  const std::vector<int>& neighbors(int v) const { return adj_[v]; }
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }
  bool has_edge(int u, int v) const;
  // All edges as (u, v) with u < v, sorted.
  std::vector<Edge> edges() const;
  void check_vertex(int v) const;

 private:
  std::vector<std::vector<int>> adj_;
  std::int64_t m_ = 0;
};

// G - X as a mask over the host graph; vertex ids stay those of the host.
class GraphView {
 public:
  explicit GraphView(const Graph& g);
  GraphView(const Graph& g, std::span<const int> removed);

  const Graph& base() const { return *g_; }
  int host_vertex_count() const { return g_->vertex_count(); }
  bool contains(int v) const { return !removed_[v]; }
  int vertex_count() const { return alive_; }
  std::vector<int> vertices() const;

  template <class F>
  void for_each_neighbor(int v, F&& f) const {
    for (int w : g_->neighbors(v)) {
      if (!removed_[w]) f(w);
    }
  }

 private:
  const Graph* g_;
  std::vector<char> removed_;
  int alive_ = 0;
};

struct ProductVertex {
  int h = 0;
  int row = 0;
  friend constexpr auto operator<=>(const ProductVertex&, const ProductVertex&) = default;
};

// Distance in a strong product: the max of the coordinate distances.
inline Distance product_distance(Distance dH, Distance dP) { return max(dH, dP); }

std::vector<Distance> bfs_distances(const Graph& g, int source);
std::vector<Distance> bfs_distances(const GraphView& g, int source);

// Dense all-pairs hop distances; intended for small graphs (H factors, oracles).
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(const Graph& g);
  explicit DistanceMatrix(const GraphView& g);

  // Table of f(u, v) for all u, v < n.
  template <class F>
  static DistanceMatrix tabulate(int n, F&& f) {
    DistanceMatrix m;
    m.n_ = n;
    m.d_.resize(static_cast<std::size_t>(n) * n);
    for (int u = 0; u < n; ++u) {
      for (int v = 0; v < n; ++v) m.d_[static_cast<std::size_t>(u) * n + v] = f(u, v);
    }
    return m;
  }

  int size() const { return n_; }
  Distance operator()(int u, int v) const { return d_[static_cast<std::size_t>(u) * n_ + v]; }

 private:
  int n_ = 0;
  std::vector<Distance> d_;
};

// The fan: center 0 adjacent to every vertex of the path 1..path_len.
Graph build_fan(int path_len);

struct Blowup {
  Graph graph;
  int b = 1;
  int vertex(int h, int slot) const { return h * b + slot; }
  int origin(int v) const { return v / b; }
};

Blowup build_blowup(const Graph& h, int b);

// Strong product of h with the path on rows 1..row_count.
// Vertex (x, row) gets id x * row_count + (row - 1).
Graph strong_product_with_path(const Graph& h, int row_count);

struct Layering {
  std::vector<int> layer_of;

  int layer_count() const;
  bool valid_for(const Graph& g) const;
};

// BFS layering from root. Other components are layered from their lowest id,
// each starting again at layer 0.
Layering bfs_layering(const Graph& g, int root = 0);
Layering bfs_layering(const GraphView& g, int root);

using Ordering = std::vector<int>;

// Throws InputError unless ord is a permutation of the vertices of g.
std::int64_t bandwidth_of_ordering(const Graph& g, const Ordering& ord);
std::int64_t bandwidth_of_ordering(const GraphView& g, const Ordering& ord);

Rational graph_local_density(const Graph& g);
Rational graph_local_density(const GraphView& g);

struct Components {
  std::vector<int> label;  // -1 for vertices outside the view
  int count = 0;
};

Components connected_components(const GraphView& g);
Components connected_components(const Graph& g);

struct InducedSubgraph {
  Graph graph;
  std::vector<int> to_host;    // local -> host id
  std::vector<int> to_local;   // host -> local id, -1 if absent
};

InducedSubgraph induced_subgraph(const Graph& g, std::span<const int> vertices);

}  // namespace fanband
