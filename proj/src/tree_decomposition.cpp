#include "fanband/tree_decomposition.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "fanband/errors.hpp"

namespace fanband {

int TreeDecomposition::width() const {
  int w = -1;
  for (const auto& b : bags) w = std::max(w, static_cast<int>(b.size()) - 1);
  return w;
}

std::vector<std::vector<int>> TreeDecomposition::tree_adjacency() const {
  std::vector<std::vector<int>> adj(bags.size());
  for (auto [x, y] : tree_edges) {
    adj[x].push_back(y);
    adj[y].push_back(x);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  return adj;
}

std::vector<DecompositionViolation> validate_decomposition(const Graph& g, const TreeDecomposition& td) {
  using Kind = DecompositionViolation::Kind;
  std::vector<DecompositionViolation> out;
  const int n = g.vertex_count();
  const int k = td.node_count();

  std::vector<std::vector<int>> holders(n);
  for (int x = 0; x < k; ++x) {
    for (int v : td.bags[x]) {
      if (v < 0 || v >= n) {
        out.push_back({Kind::BadVertex, "bag " + std::to_string(x) + " names vertex " + std::to_string(v)});
        continue;
      }
      holders[v].push_back(x);
    }
  }

  bool tree_ok = true;
  for (auto [x, y] : td.tree_edges) {
    if (x < 0 || y < 0 || x >= k || y >= k || x == y) {
      out.push_back({Kind::NotATree, "bad tree edge (" + std::to_string(x) + "," + std::to_string(y) + ")"});
      tree_ok = false;
    }
  }
  if (tree_ok && k > 0) {
    if (static_cast<int>(td.tree_edges.size()) != k - 1) {
      out.push_back({Kind::NotATree, std::to_string(k) + " nodes but " + std::to_string(td.tree_edges.size()) +
                                         " tree edges"});
      tree_ok = false;
    } else {
      Graph t(k, td.tree_edges);
      if (connected_components(t).count != 1) {
        out.push_back({Kind::NotATree, "tree is disconnected"});
        tree_ok = false;
      }
    }
  }

  for (int v = 0; v < n; ++v) {
    if (holders[v].empty()) out.push_back({Kind::UncoveredVertex, "vertex " + std::to_string(v) + " is in no bag"});
  }
  for (auto [u, v] : g.edges()) {
    std::vector<int> common;
    std::set_intersection(holders[u].begin(), holders[u].end(), holders[v].begin(), holders[v].end(),
                          std::back_inserter(common));
    if (common.empty()) {
      out.push_back({Kind::UncoveredEdge, "edge (" + std::to_string(u) + "," + std::to_string(v) + ") is in no bag"});
    }
  }

  if (tree_ok) {
    const auto adj = td.tree_adjacency();
    std::vector<int> mark(k, -1);
    std::vector<int> stack;
    for (int v = 0; v < n; ++v) {
      if (holders[v].empty()) continue;
      for (int x : holders[v]) mark[x] = v;
      int reached = 0;
      stack.assign(1, holders[v].front());
      mark[holders[v].front()] = -2 - v;
      while (!stack.empty()) {
        const int x = stack.back();
        stack.pop_back();
        ++reached;
        for (int y : adj[x]) {
          if (mark[y] == v) {
            mark[y] = -2 - v;
            stack.push_back(y);
          }
        }
      }
      if (reached != static_cast<int>(holders[v].size())) {
        out.push_back({Kind::DisconnectedTrace, "bags holding vertex " + std::to_string(v) + " are not connected"});
      }
    }
  }

  if (td.declared_width >= 0 && td.declared_width != td.width()) {
    out.push_back({Kind::WrongWidth, "declared width " + std::to_string(td.declared_width) + " but bags give " +
                                         std::to_string(td.width())});
  }
  return out;
}

bool is_valid_decomposition(const Graph& g, const TreeDecomposition& td) {
  return validate_decomposition(g, td).empty();
}

namespace {

class BitMatrix {
 public:
  explicit BitMatrix(int n) : words_((n + 63) / 64), bits_(static_cast<std::size_t>(n) * words_, 0) {}

  void set(int r, int c) { row(r)[c >> 6] |= 1ULL << (c & 63); }
  void reset(int r, int c) { row(r)[c >> 6] &= ~(1ULL << (c & 63)); }
  bool test(int r, int c) const { return (row(r)[c >> 6] >> (c & 63)) & 1ULL; }
  int common(int a, int b) const {
    int s = 0;
    const std::uint64_t* x = row(a);
    const std::uint64_t* y = row(b);
    for (int i = 0; i < words_; ++i) s += std::popcount(x[i] & y[i]);
    return s;
  }

 private:
  std::uint64_t* row(int r) { return bits_.data() + static_cast<std::size_t>(r) * words_; }
  const std::uint64_t* row(int r) const { return bits_.data() + static_cast<std::size_t>(r) * words_; }
  int words_;
  std::vector<std::uint64_t> bits_;
};

}  // namespace

TreeDecomposition minfill_decomposition(const Graph& g) {
  const int n = g.vertex_count();
  if (n == 0) throw InputError("cannot decompose an empty graph");

  BitMatrix adj(n);
  std::vector<std::vector<int>> nbrs(n);
  for (int v = 0; v < n; ++v) {
    for (int w : g.neighbors(v)) adj.set(v, w);
    nbrs[v] = g.neighbors(v);
  }
  std::vector<char> eliminated(n, 0);

  // Missing edges among the neighbors of v: sum over u in N(v) of non-neighbors of u in N(v), halved.
  auto fill_of = [&](int v) {
    const std::int64_t d = static_cast<std::int64_t>(nbrs[v].size());
    std::int64_t s = 0;
    for (int u : nbrs[v]) s += d - 1 - adj.common(u, v);
    return s / 2;
  };

  std::vector<std::int64_t> fill(n);
  std::set<std::pair<std::int64_t, int>> queue;
  for (int v = 0; v < n; ++v) {
    fill[v] = fill_of(v);
    queue.emplace(fill[v], v);
  }

  TreeDecomposition td;
  td.bags.resize(n);
  std::vector<int> position(n, -1);
  std::vector<std::vector<int>> later(n);
  std::vector<int> order;
  order.reserve(n);
  std::vector<int> touched_mark(n, -1);

  while (!queue.empty()) {
    const int v = queue.begin()->second;
    queue.erase(queue.begin());
    position[v] = static_cast<int>(order.size());
    order.push_back(v);
    eliminated[v] = 1;

    later[v] = nbrs[v];
    std::vector<int> bag = nbrs[v];
    bag.push_back(v);
    std::sort(bag.begin(), bag.end());
    td.bags[v] = std::move(bag);

    const auto& nv = later[v];
    for (int u : nv) {
      adj.reset(u, v);
      nbrs[u].erase(std::find(nbrs[u].begin(), nbrs[u].end(), v));
    }
    for (std::size_t a = 0; a < nv.size(); ++a) {
      for (std::size_t b = a + 1; b < nv.size(); ++b) {
        if (!adj.test(nv[a], nv[b])) {
          adj.set(nv[a], nv[b]);
          adj.set(nv[b], nv[a]);
          nbrs[nv[a]].push_back(nv[b]);
          nbrs[nv[b]].push_back(nv[a]);
        }
      }
    }
    std::vector<int> touched;
    for (int u : nv) {
      if (touched_mark[u] != v) {
        touched_mark[u] = v;
        touched.push_back(u);
      }
      for (int w : nbrs[u]) {
        if (touched_mark[w] != v) {
          touched_mark[w] = v;
          touched.push_back(w);
        }
      }
    }
    for (int u : touched) {
      const std::int64_t f = fill_of(u);
      if (f != fill[u]) {
        queue.erase({fill[u], u});
        fill[u] = f;
        queue.emplace(f, u);
      }
    }
  }

  std::vector<int> roots;
  for (int v : order) {
    if (later[v].empty()) {
      roots.push_back(v);
      continue;
    }
    int parent = later[v].front();
    for (int u : later[v]) {
      if (position[u] < position[parent]) parent = u;
    }
    td.tree_edges.emplace_back(std::min(v, parent), std::max(v, parent));
  }
  for (std::size_t i = 1; i < roots.size(); ++i) {
    td.tree_edges.emplace_back(std::min(roots[i - 1], roots[i]), std::max(roots[i - 1], roots[i]));
  }
  std::sort(td.tree_edges.begin(), td.tree_edges.end());
  return td;
}

Graph ttree_complete(const Graph& h, const TreeDecomposition& td) {
  const auto violations = validate_decomposition(h, td);
  if (!violations.empty()) throw InputError("invalid tree decomposition: " + violations.front().detail);
  std::vector<Edge> edges = h.edges();
  for (const auto& bag : td.bags) {
    for (std::size_t a = 0; a < bag.size(); ++a) {
      for (std::size_t b = a + 1; b < bag.size(); ++b) edges.emplace_back(bag[a], bag[b]);
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return Graph(h.vertex_count(), edges);
}

SeparatorResult weighted_separator(const Graph& h, const TreeDecomposition& td, const std::vector<std::int64_t>& xi,
                                   std::int64_t c) {
  if (c < 1) throw InputError("separator parameter c must be at least 1");
  const int n = h.vertex_count();
  if (static_cast<int>(xi.size()) != n) throw InputError("weight function size does not match the graph");
  for (auto w : xi) {
    if (w < 0) throw InputError("negative vertex weight");
  }
  SeparatorResult out;
  const int k = td.node_count();
  if (k == 0 || c == 1) return out;

  const auto adj = td.tree_adjacency();
  std::vector<int> parent(k, -1), bfs{0};
  std::vector<char> seen(k, 0);
  seen[0] = 1;
  for (std::size_t i = 0; i < bfs.size(); ++i) {
    for (int y : adj[bfs[i]]) {
      if (!seen[y]) {
        seen[y] = 1;
        parent[y] = bfs[i];
        bfs.push_back(y);
      }
    }
  }
  std::vector<std::vector<int>> children(k);
  for (int x : bfs) {
    if (parent[x] >= 0) children[parent[x]].push_back(x);
  }
  for (auto& ch : children) std::sort(ch.begin(), ch.end());

  std::vector<int> top(n, -1);
  for (int x : bfs) {
    for (int v : td.bags[x]) {
      if (top[v] < 0) top[v] = x;
    }
  }

  std::vector<char> alive(n, 1);
  std::int64_t total = 0;
  for (int v = 0; v < n; ++v) total += xi[v];

  std::vector<std::int64_t> down(k), hx(k);
  std::vector<char> in_subtree(k);
  std::vector<char> chosen(n, 0);
  for (std::int64_t cc = c; cc >= 2 && total > 0; --cc) {
    std::fill(down.begin(), down.end(), 0);
    for (int v = 0; v < n; ++v) {
      if (alive[v] && top[v] >= 0) down[top[v]] += xi[v];
    }
    for (auto it = bfs.rbegin(); it != bfs.rend(); ++it) {
      if (parent[*it] >= 0) down[parent[*it]] += down[*it];
    }
    for (int x = 0; x < k; ++x) {
      hx[x] = down[x];
      for (int v : td.bags[x]) {
        if (alive[v] && top[v] != x) hx[x] += xi[v];
      }
    }
    auto heavy = [&](int x) { return hx[x] * cc >= total; };

    int y = bfs.front();
    for (bool moved = true; moved;) {
      moved = false;
      for (int z : children[y]) {
        if (heavy(z)) {
          y = z;
          moved = true;
          break;
        }
      }
    }
    out.nodes.push_back(y);
    for (int v : td.bags[y]) {
      if (alive[v]) chosen[v] = 1;
    }

    std::fill(in_subtree.begin(), in_subtree.end(), 0);
    std::vector<int> stack{y};
    while (!stack.empty()) {
      const int x = stack.back();
      stack.pop_back();
      in_subtree[x] = 1;
      for (int z : children[x]) stack.push_back(z);
    }
    for (int v = 0; v < n; ++v) {
      if (alive[v] && top[v] >= 0 && in_subtree[top[v]]) alive[v] = 0;
    }
    for (int v : td.bags[y]) alive[v] = 0;
    total -= hx[y];
  }
  for (int v = 0; v < n; ++v) {
    if (chosen[v]) out.vertices.push_back(v);
  }
  return out;
}

}  // namespace fanband
