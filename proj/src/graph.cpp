#include "fanband/graph.hpp"

#include <algorithm>
#include <string>

#include "fanband/errors.hpp"

namespace fanband {

Graph::Graph(int n) {
  if (n < 0) throw InputError("negative vertex count");
  adj_.resize(n);
}

Graph::Graph(int n, std::span<const Edge> edges) : Graph(n) {
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw InputError("edge (" + std::to_string(u) + "," + std::to_string(v) + ") out of range for n=" +
                       std::to_string(n));
    }
    if (u == v) throw InputError("self-loop at vertex " + std::to_string(u));
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  for (int v = 0; v < n; ++v) {
    auto& a = adj_[v];
    std::sort(a.begin(), a.end());
    if (auto it = std::adjacent_find(a.begin(), a.end()); it != a.end()) {
      throw InputError("duplicate edge (" + std::to_string(std::min(v, *it)) + "," +
                       std::to_string(std::max(v, *it)) + ")");
    }
  }
  m_ = static_cast<std::int64_t>(edges.size());
}

bool Graph::has_edge(int u, int v) const {
  const auto& a = adj_[u];
  return std::binary_search(a.begin(), a.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(m_);
  for (int u = 0; u < vertex_count(); ++u) {
    for (int v : adj_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

void Graph::check_vertex(int v) const {
  if (v < 0 || v >= vertex_count()) {
    throw InputError("vertex " + std::to_string(v) + " out of range for n=" + std::to_string(vertex_count()));
  }
}

GraphView::GraphView(const Graph& g) : g_(&g), removed_(g.vertex_count(), 0), alive_(g.vertex_count()) {}

GraphView::GraphView(const Graph& g, std::span<const int> removed) : GraphView(g) {
  for (int v : removed) {
    g.check_vertex(v);
    if (!removed_[v]) {
      removed_[v] = 1;
      --alive_;
    }
  }
}

std::vector<int> GraphView::vertices() const {
  std::vector<int> out;
  out.reserve(alive_);
  for (int v = 0; v < host_vertex_count(); ++v) {
    if (!removed_[v]) out.push_back(v);
  }
  return out;
}

namespace {

// Hop counts from source inside the view, -1 when unreachable.
void bfs_raw(const GraphView& g, int source, std::vector<int>& dist, std::vector<int>& queue) {
  dist.assign(g.host_vertex_count(), -1);
  queue.clear();
  dist[source] = 0;
  queue.push_back(source);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int v = queue[head];
    g.for_each_neighbor(v, [&](int w) {
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    });
  }
}

std::vector<Distance> to_distances(const std::vector<int>& raw) {
  std::vector<Distance> out(raw.size(), Distance::infinity());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] >= 0) out[i] = raw[i];
  }
  return out;
}

}  // namespace

std::vector<Distance> bfs_distances(const GraphView& g, int source) {
  g.base().check_vertex(source);
  if (!g.contains(source)) throw InputError("source " + std::to_string(source) + " is not in the graph");
  std::vector<int> dist, queue;
  bfs_raw(g, source, dist, queue);
  return to_distances(dist);
}

std::vector<Distance> bfs_distances(const Graph& g, int source) { return bfs_distances(GraphView(g), source); }

DistanceMatrix::DistanceMatrix(const Graph& g) : DistanceMatrix(GraphView(g)) {}

DistanceMatrix::DistanceMatrix(const GraphView& g) : n_(g.host_vertex_count()) {
  d_.assign(static_cast<std::size_t>(n_) * n_, Distance::infinity());
  std::vector<int> dist, queue;
  for (int s = 0; s < n_; ++s) {
    if (!g.contains(s)) continue;
    bfs_raw(g, s, dist, queue);
    for (int v : queue) d_[static_cast<std::size_t>(s) * n_ + v] = dist[v];
  }
}

Graph build_fan(int path_len) {
  if (path_len < 1) throw InputError("fan path length must be at least 1");
  std::vector<Edge> edges;
  for (int i = 1; i <= path_len; ++i) {
    edges.emplace_back(0, i);
    if (i > 1) edges.emplace_back(i - 1, i);
  }
  return Graph(path_len + 1, edges);
}

Blowup build_blowup(const Graph& h, int b) {
  if (b < 1) throw InputError("blowup factor must be at least 1");
  Blowup out;
  out.b = b;
  std::vector<Edge> edges;
  for (int v = 0; v < h.vertex_count(); ++v) {
    for (int s = 0; s < b; ++s) {
      for (int t = s + 1; t < b; ++t) edges.emplace_back(out.vertex(v, s), out.vertex(v, t));
    }
  }
  for (auto [v, w] : h.edges()) {
    for (int s = 0; s < b; ++s) {
      for (int t = 0; t < b; ++t) edges.emplace_back(out.vertex(v, s), out.vertex(w, t));
    }
  }
  out.graph = Graph(h.vertex_count() * b, edges);
  return out;
}

Graph strong_product_with_path(const Graph& h, int row_count) {
  if (row_count < 1) throw InputError("path must have at least one row");
  auto id = [row_count](int x, int row) { return x * row_count + (row - 1); };
  std::vector<Edge> edges;
  for (int x = 0; x < h.vertex_count(); ++x) {
    for (int r = 1; r < row_count; ++r) edges.emplace_back(id(x, r), id(x, r + 1));
  }
  for (auto [x, y] : h.edges()) {
    for (int r = 1; r <= row_count; ++r) {
      edges.emplace_back(id(x, r), id(y, r));
      if (r < row_count) {
        edges.emplace_back(id(x, r), id(y, r + 1));
        edges.emplace_back(id(x, r + 1), id(y, r));
      }
    }
  }
  return Graph(h.vertex_count() * row_count, edges);
}

int Layering::layer_count() const {
  int top = -1;
  for (int l : layer_of) top = std::max(top, l);
  return top + 1;
}

bool Layering::valid_for(const Graph& g) const {
  if (static_cast<int>(layer_of.size()) != g.vertex_count()) return false;
  for (auto [u, v] : g.edges()) {
    if (std::abs(layer_of[u] - layer_of[v]) > 1) return false;
  }
  return true;
}

Layering bfs_layering(const GraphView& g, int root) {
  Layering out;
  out.layer_of.assign(g.host_vertex_count(), -1);
  if (g.vertex_count() == 0) return out;
  g.base().check_vertex(root);
  if (!g.contains(root)) throw InputError("root " + std::to_string(root) + " is not in the graph");
  std::vector<int> dist, queue;
  auto layer_from = [&](int r) {
    bfs_raw(g, r, dist, queue);
    for (int v : queue) out.layer_of[v] = dist[v];
  };
  layer_from(root);
  for (int v = 0; v < g.host_vertex_count(); ++v) {
    if (g.contains(v) && out.layer_of[v] < 0) layer_from(v);
  }
  return out;
}

Layering bfs_layering(const Graph& g, int root) { return bfs_layering(GraphView(g), root); }

std::int64_t bandwidth_of_ordering(const GraphView& g, const Ordering& ord) {
  std::vector<int> pos(g.host_vertex_count(), -1);
  if (static_cast<int>(ord.size()) != g.vertex_count()) {
    throw InputError("ordering has " + std::to_string(ord.size()) + " entries but the graph has " +
                     std::to_string(g.vertex_count()) + " vertices");
  }
  for (std::size_t i = 0; i < ord.size(); ++i) {
    const int v = ord[i];
    if (v < 0 || v >= g.host_vertex_count() || !g.contains(v)) {
      throw InputError("ordering entry " + std::to_string(v) + " is not a vertex of the graph");
    }
    if (pos[v] >= 0) throw InputError("vertex " + std::to_string(v) + " appears twice in the ordering");
    pos[v] = static_cast<int>(i);
  }
  std::int64_t bw = 0;
  for (int v : ord) {
    g.for_each_neighbor(v, [&](int w) { bw = std::max<std::int64_t>(bw, std::abs(pos[v] - pos[w])); });
  }
  return bw;
}

std::int64_t bandwidth_of_ordering(const Graph& g, const Ordering& ord) {
  return bandwidth_of_ordering(GraphView(g), ord);
}

Rational graph_local_density(const GraphView& g) {
  if (g.vertex_count() == 0) throw InputError("local density of an empty graph");
  std::int64_t best_num = 0, best_den = 1;
  std::vector<int> dist, queue;
  for (int s = 0; s < g.host_vertex_count(); ++s) {
    if (!g.contains(s)) continue;
    bfs_raw(g, s, dist, queue);
    // queue is in nondecreasing distance order; evaluate at the last vertex of each distance.
    for (std::size_t idx = 1; idx < queue.size(); ++idx) {
      const int r = dist[queue[idx]];
      if (idx + 1 < queue.size() && dist[queue[idx + 1]] == r) continue;
      const std::int64_t num = static_cast<std::int64_t>(idx);  // ball size minus one
      if (num * best_den > best_num * r) {
        best_num = num;
        best_den = r;
      }
    }
  }
  return Rational(best_num, best_den);
}

Rational graph_local_density(const Graph& g) { return graph_local_density(GraphView(g)); }

Components connected_components(const GraphView& g) {
  Components out;
  out.label.assign(g.host_vertex_count(), -1);
  std::vector<int> stack;
  for (int s = 0; s < g.host_vertex_count(); ++s) {
    if (!g.contains(s) || out.label[s] >= 0) continue;
    const int c = out.count++;
    out.label[s] = c;
    stack.push_back(s);
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      g.for_each_neighbor(v, [&](int w) {
        if (out.label[w] < 0) {
          out.label[w] = c;
          stack.push_back(w);
        }
      });
    }
  }
  return out;
}

Components connected_components(const Graph& g) { return connected_components(GraphView(g)); }

InducedSubgraph induced_subgraph(const Graph& g, std::span<const int> vertices) {
  InducedSubgraph out;
  out.to_local.assign(g.vertex_count(), -1);
  for (int v : vertices) {
    g.check_vertex(v);
    if (out.to_local[v] >= 0) throw InputError("vertex " + std::to_string(v) + " listed twice");
    out.to_local[v] = static_cast<int>(out.to_host.size());
    out.to_host.push_back(v);
  }
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < out.to_host.size(); ++i) {
    for (int w : g.neighbors(out.to_host[i])) {
      const int j = out.to_local[w];
      if (j > static_cast<int>(i)) edges.emplace_back(static_cast<int>(i), j);
    }
  }
  out.graph = Graph(static_cast<int>(out.to_host.size()), edges);
  return out;
}

}  // namespace fanband
