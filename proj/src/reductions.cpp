#include "fanband/reductions.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "fanband/errors.hpp"

namespace fanband {

namespace {

std::string edge_text(Edge e) { return std::to_string(e.first) + "-" + std::to_string(e.second); }

Edge normalized(Edge e) { return e.first < e.second ? e : Edge{e.second, e.first}; }

CrossingReduction everything(const DrawnGraph& dg, int k, std::string why) {
  CrossingReduction out;
  out.planarization = planarize(dg, k);
  out.X.resize(dg.g.vertex_count());
  for (int v = 0; v < dg.g.vertex_count(); ++v) out.X[v] = v;
  out.gate = std::move(why);
  return out;
}

// Removes x1 from G', sparsifies and orders the rest, then lifts back to G.
CrossingReduction reduce_after_planarizer(const DrawnGraph& dg, int k, std::vector<int> x1, const PipelineConfig& cfg) {
  CrossingReduction out;
  out.planarization = planarize(dg, k);
  const Planarization& pl = out.planarization;
  const int n = dg.g.vertex_count();
  const int np = pl.graph.vertex_count();
  std::sort(x1.begin(), x1.end());
  x1.erase(std::unique(x1.begin(), x1.end()), x1.end());
  for (int v : x1) {
    if (v < 0 || v >= np) throw InputError("planarizing set names vertex " + std::to_string(v) + " outside G'");
  }

  std::vector<char> in_x1(np, 0);
  for (int v : x1) in_x1[v] = 1;
  std::vector<int> keep;
  for (int v = 0; v < np; ++v) {
    if (!in_x1[v]) keep.push_back(v);
  }
  std::vector<char> in_xp = in_x1;
  Ordering planar_order;
  if (!keep.empty()) {
    const InducedSubgraph sub = induced_subgraph(pl.graph, keep);
    PipelineConfig inner_cfg = cfg;
    const int sn = sub.graph.vertex_count();
    if (sn > 1 && cfg.D > Rational(sn)) inner_cfg.D = Rational(sn);
    const PlanarRun run = planar_pipeline(sub.graph, inner_cfg);
    for (int v : run.result.X) in_xp[sub.to_host[v]] = 1;
    for (int v : run.result.ordering) planar_order.push_back(sub.to_host[v]);
    out.certified = run.result.certified;
  }
  for (int v = 0; v < np; ++v) {
    if (in_xp[v]) out.X_prime.push_back(v);
  }
  out.planar_bandwidth = bandwidth_of_ordering(GraphView(pl.graph, out.X_prime), planar_order);

  std::vector<char> in_x(n, 0);
  for (int v : out.X_prime) {
    if (!pl.is_dummy(v)) {
      in_x[v] = 1;
    } else {
      for (int w : pl.dummy_ends[v - n]) in_x[w] = 1;
    }
  }
  for (int v = 0; v < n; ++v) {
    if (in_x[v]) out.X.push_back(v);
  }
  for (int v : planar_order) {
    if (v < n && !in_x[v]) out.ordering.push_back(v);
  }
  out.bandwidth = bandwidth_of_ordering(GraphView(dg.g, out.X), out.ordering);
  for (const auto& path : pl.edge_path) out.max_path_length = std::max(out.max_path_length, int(path.size()) - 1);
  return out;
}

}  // namespace

Planarization planarize(const DrawnGraph& dg, int k) {
  if (k < 0) throw InputError("k must be non-negative");
  const Graph& g = dg.g;
  const int n = g.vertex_count();
  const std::vector<Edge> edges = g.edges();
  std::map<Edge, int> index;
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) index[edges[e]] = e;

  Planarization pl;
  pl.original_n = n;
  const int nc = static_cast<int>(dg.crossings.size());
  std::vector<std::vector<std::pair<double, int>>> along(edges.size());
  std::set<std::pair<int, int>> pairs;
  for (int c = 0; c < nc; ++c) {
    const Crossing& x = dg.crossings[c];
    const Edge a = normalized(x.a), b = normalized(x.b);
    const auto ia = index.find(a), ib = index.find(b);
    if (ia == index.end() || ib == index.end()) {
      throw InputError("crossing " + std::to_string(c) + " names a pair that is not an edge");
    }
    if (a.first == b.first || a.first == b.second || a.second == b.first || a.second == b.second) {
      throw InputError("crossing " + std::to_string(c) + ": edges " + edge_text(a) + " and " + edge_text(b) +
                       " share an endpoint");
    }
    if (!(x.ta > 0 && x.ta < 1 && x.tb > 0 && x.tb < 1)) {
      throw InputError("crossing " + std::to_string(c) + " has a position outside (0,1)");
    }
    const auto key = std::minmax(ia->second, ib->second);
    if (!pairs.insert(key).second) {
      throw InputError("edges " + edge_text(a) + " and " + edge_text(b) + " cross more than once");
    }
    along[ia->second].push_back({x.ta, n + c});
    along[ib->second].push_back({x.tb, n + c});
    pl.dummy_ends.push_back({a.first, a.second, b.first, b.second});
  }

  std::vector<Edge> out_edges;
  pl.edge_path.resize(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    auto& list = along[e];
    std::sort(list.begin(), list.end());
    for (std::size_t q = 1; q < list.size(); ++q) {
      if (list[q].first == list[q - 1].first) {
        throw InputError("edge " + edge_text(edges[e]) + " has two crossings at the same point");
      }
    }
    if (static_cast<int>(list.size()) > k) {
      throw InputError("edge " + edge_text(edges[e]) + " has " + std::to_string(list.size()) +
                       " crossings, more than k = " + std::to_string(k));
    }
    pl.max_crossings_per_edge = std::max(pl.max_crossings_per_edge, static_cast<int>(list.size()));
    auto& path = pl.edge_path[e];
    path.push_back(edges[e].first);
    for (const auto& [t, d] : list) path.push_back(d);
    path.push_back(edges[e].second);
    for (std::size_t q = 1; q < path.size(); ++q) out_edges.push_back(normalized({path[q - 1], path[q]}));
  }
  pl.graph = Graph(n + nc, out_edges);
  return pl;
}

double kplanar_edge_limit(int n, int k) {
  if (k == 0) return n >= 3 ? 3.0 * n - 6 : static_cast<double>(n);
  return 4.108 * std::sqrt(static_cast<double>(k)) * n;
}

CrossingReduction kplanar_reduce(const DrawnGraph& dg, int k, const PipelineConfig& cfg) {
  const int n = dg.g.vertex_count();
  const double limit = kplanar_edge_limit(n, k);
  if (static_cast<double>(dg.g.edge_count()) > limit) {
    throw InputError("a " + std::to_string(k) + "-planar graph on " + std::to_string(n) + " vertices has at most " +
                     std::to_string(static_cast<std::int64_t>(limit)) + " edges; got " +
                     std::to_string(dg.g.edge_count()));
  }
  return reduce_after_planarizer(dg, k, {}, cfg);
}

CrossingReduction gk_reduce(const DrawnGraph& dg, int genus, int k, const std::optional<std::vector<int>>& planarizing,
                            const PipelineConfig& cfg) {
  if (genus < 0) throw InputError("genus must be non-negative");
  const double n = dg.g.vertex_count();
  const double m = static_cast<double>(dg.g.edge_count());
  if (k > std::pow(n, 2.0 / 3.0) || genus > n) return everything(dg, k, "k > n^(2/3) or g > n");
  if (m >= 64 * n && genus >= n * n / m) return everything(dg, k, "m >= 64n and g >= n^2/m");
  if (genus == 0 && !planarizing) return kplanar_reduce(dg, k, cfg);
  if (!planarizing) {
    throw InputError("genus " + std::to_string(genus) +
                     " > 0 needs a planarizing set of the crossing-augmented graph; supply one with --planarizing");
  }
  return reduce_after_planarizer(dg, k, *planarizing, cfg);
}

}  // namespace fanband
