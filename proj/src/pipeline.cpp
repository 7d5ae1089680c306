#include "fanband/pipeline.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "fanband/errors.hpp"
#include "fanband/random.hpp"

namespace fanband {

namespace {

std::string pair_text(int u, int v) { return std::to_string(u) + "-" + std::to_string(v); }

int default_k(int n) { return std::max(2, ceil_log2(std::max(1, n))); }

std::vector<int> complement(int n, const std::vector<int>& X) {
  std::vector<char> gone(n, 0);
  for (int v : X) gone[v] = 1;
  std::vector<int> rest;
  for (int v = 0; v < n; ++v) {
    if (!gone[v]) rest.push_back(v);
  }
  return rest;
}

// Runs the restarts over one embedding and fills the ordering fields of out.
void pick_best_projection(const Graph& g, const std::vector<int>& X, const Embedding& emb, const PipelineConfig& cfg,
                          PipelineResult& out) {
  const StreamSplitter splitter(cfg.seed);
  const GraphView rest(g, X);
  const int restarts = std::max(1, cfg.restarts);
  for (int r = 0; r < restarts; ++r) {
    Ordering ord = project_order(emb, splitter.stream_seed("restart/" + std::to_string(r)));
    const std::int64_t bw = bandwidth_of_ordering(rest, ord);
    out.restart_bandwidths.push_back(bw);
    if (r == 0 || bw < out.bandwidth) {
      out.bandwidth = bw;
      out.ordering = std::move(ord);
    }
  }
  std::vector<std::int64_t> sorted = out.restart_bandwidths;
  std::sort(sorted.begin(), sorted.end());
  out.median_bandwidth = sorted[(sorted.size() - 1) / 2];
}

EmbeddingParams embedding_params(const PipelineConfig& cfg, int n) {
  EmbeddingParams p;
  p.k = cfg.k > 0 ? cfg.k : default_k(n);
  p.a = cfg.a;
  p.seed = StreamSplitter(cfg.seed).stream_seed("embedding");
  p.dims_cap = cfg.dims_cap;
  return p;
}

PipelineResult trivial_result(int n) {
  PipelineResult out;
  out.ordering.resize(n);
  std::iota(out.ordering.begin(), out.ordering.end(), 0);
  out.restart_bandwidths.assign(1, 0);
  return out;
}

}  // namespace

void validate_product_input(const ProductInput& in) {
  const int n = in.g.vertex_count();
  if (static_cast<int>(in.place.size()) != n) {
    throw InputError("placement lists " + std::to_string(in.place.size()) + " vertices but G has " +
                     std::to_string(n));
  }
  if (in.rows < 1 && n > 0) throw InputError("P must have at least one row");
  std::set<ProductVertex> used;
  for (int v = 0; v < n; ++v) {
    const ProductVertex p = in.place[v];
    if (p.h < 0 || p.h >= in.h.vertex_count()) {
      throw InputError("G vertex " + std::to_string(v) + " is placed on H vertex " + std::to_string(p.h) +
                       " which does not exist");
    }
    if (p.row < 1 || p.row > in.rows) {
      throw InputError("G vertex " + std::to_string(v) + " is placed on row " + std::to_string(p.row) +
                       " outside 1.." + std::to_string(in.rows));
    }
    if (!used.insert(p).second) {
      throw InputError("G vertex " + std::to_string(v) + " shares product vertex (" + std::to_string(p.h) + "," +
                       std::to_string(p.row) + ") with another vertex");
    }
  }
  for (const auto& [u, v] : in.g.edges()) {
    const ProductVertex a = in.place[u], b = in.place[v];
    const bool h_ok = a.h == b.h || in.h.has_edge(a.h, b.h);
    const bool p_ok = std::abs(a.row - b.row) <= 1;
    if (!h_ok || !p_ok) {
      throw InputError("G edge " + pair_text(u, v) + " joins (" + std::to_string(a.h) + "," + std::to_string(a.row) +
                       ") and (" + std::to_string(b.h) + "," + std::to_string(b.row) + "), not an edge of H x P");
    }
  }
  if (in.td) {
    const auto violations = validate_decomposition(in.h, *in.td);
    if (!violations.empty()) throw InputError("tree decomposition of H is invalid: " + violations.front().detail);
  }
}

std::vector<ProductVertex> compress_rows(const std::vector<ProductVertex>& place) {
  std::vector<int> rows;
  rows.reserve(place.size());
  for (const auto& p : place) rows.push_back(p.row);
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  std::vector<ProductVertex> out = place;
  for (auto& p : out) p.row = static_cast<int>(std::lower_bound(rows.begin(), rows.end(), p.row) - rows.begin()) + 1;
  return out;
}

ProductRun product_pipeline(const ProductInput& in, const PipelineConfig& cfg) {
  validate_product_input(in);
  if (cfg.D < Rational(2)) throw InputError("the product pipeline needs D >= 2; got " + cfg.D.to_string());
  if (cfg.k != 0 && cfg.k < 2) throw InputError("k must be at least 2");
  const int n = in.g.vertex_count();
  if (n == 0) throw InputError("G has no vertices");

  ProductRun run;
  run.td = in.td ? *in.td : minfill_decomposition(in.h);
  run.h_completed = ttree_complete(in.h, run.td);
  run.place = compress_rows(in.place);
  run.result.width = run.td.width();
  run.result.certified = !cfg.dims_cap;
  if (n == 1) {
    run.result = trivial_result(1);
    run.result.width = run.td.width();
    run.result.certified = !cfg.dims_cap;
    return run;
  }

  StructuredSparsifier sp = product_sparsify(run.h_completed, run.td, run.place, cfg.D);
  run.size_bound_ok = product_size_bound_holds(sp, run.td.width());
  for (int v = 0; v < n; ++v) {
    if (sp.in_X(run.place[v])) run.result.X.push_back(v);
  }
  run.metric.emplace(run.h_completed, std::move(sp));

  const std::vector<int> ids = complement(n, run.result.X);
  if (ids.empty()) {
    run.result.restart_bandwidths.assign(1, 0);
    return run;
  }
  std::vector<ProductVertex> points;
  points.reserve(ids.size());
  for (int v : ids) points.push_back(run.place[v]);
  run.embedding = build_embedding(ids, points, *run.metric, embedding_params(cfg, n));
  run.result.certified = run.embedding->certified;
  pick_best_projection(in.g, run.result.X, *run.embedding, cfg, run.result);
  return run;
}

PipelineResult order_by_layered_embedding(const Graph& g, const PipelineConfig& cfg) {
  const int n = g.vertex_count();
  if (n <= 1) {
    PipelineResult out = trivial_result(n);
    out.certified = !cfg.dims_cap;
    return out;
  }

  const TreeDecomposition td = minfill_decomposition(g);
  const Graph h = ttree_complete(g, td);
  const Layering layers = bfs_layering(g, 0);
  std::vector<ProductVertex> points(n);
  std::vector<int> ids(n);
  for (int v = 0; v < n; ++v) {
    ids[v] = v;
    points[v] = {v, layers.layer_of[v] + 1};
  }
  const int log_N = ceil_log2(n);
  std::vector<std::vector<ProductCell>> cells(log_N + 1);
  for (int i = 0; i <= log_N; ++i) cells[i].resize((1 << log_N) >> i);
  const StarMetric sm(h, StructuredSparsifier(n, n, Rational(2), std::move(cells)));

  PipelineResult out;
  out.width = td.width();
  const Embedding emb = build_embedding(ids, points, sm, embedding_params(cfg, n));
  out.certified = emb.certified;
  pick_best_projection(g, {}, emb, cfg, out);
  return out;
}

PlanarRun planar_pipeline(const Graph& g, const PipelineConfig& cfg) {
  const int n = g.vertex_count();
  if (n == 0) throw InputError("G has no vertices");
  if (cfg.k != 0 && cfg.k < 2) throw InputError("k must be at least 2");
  PlanarRun run;
  BakerConfig bc;
  bc.D = cfg.D;
  bc.layering = bfs_layering(g, 0);
  run.baker = baker_sparsify(g, bc);
  run.result.X = run.baker.X;

  const std::vector<int> keep = complement(n, run.result.X);
  const InducedSubgraph sub = induced_subgraph(g, keep);
  PipelineResult inner = order_by_layered_embedding(sub.graph, cfg);
  run.result.ordering.clear();
  for (int v : inner.ordering) run.result.ordering.push_back(sub.to_host[v]);
  run.result.bandwidth = inner.bandwidth;
  run.result.restart_bandwidths = inner.restart_bandwidths;
  run.result.median_bandwidth = inner.median_bandwidth;
  run.result.certified = inner.certified;
  run.result.width = run.baker.max_width;
  return run;
}

FanCertificate fan_certificate(const Graph& g, const std::vector<int>& X, const Ordering& ord, int b) {
  const int n = g.vertex_count();
  if (n == 0) throw InputError("cannot certify an empty graph");
  if (b < 1 || b > n) throw InputError("b must lie in [1, n]; got " + std::to_string(b));
  if (static_cast<int>(X.size()) > b) {
    throw ConstraintError("|X| = " + std::to_string(X.size()) + " exceeds b = " + std::to_string(b));
  }
  for (int v : X) g.check_vertex(v);
  const std::int64_t bw = bandwidth_of_ordering(GraphView(g, X), ord);
  if (bw > b) throw ConstraintError("bandwidth " + std::to_string(bw) + " of G - X exceeds b = " + std::to_string(b));

  FanCertificate cert;
  cert.n = n;
  cert.b = b;
  cert.X = X;
  cert.ordering = ord;
  while (static_cast<int>(cert.X.size()) < b) {
    cert.X.push_back(cert.ordering.back());
    cert.ordering.pop_back();
  }
  cert.path_len = std::max((n + b - 1) / b - 1, 1);
  cert.fan_size = cert.path_len + 1;
  cert.mapping.assign(n, {-1, -1});
  for (int s = 0; s < b; ++s) cert.mapping[cert.X[s]] = {0, s};
  for (int idx = 0; idx < static_cast<int>(cert.ordering.size()); ++idx) {
    cert.mapping[cert.ordering[idx]] = {idx / b + 1, idx % b};
  }
  cert.measured_bandwidth = bandwidth_of_ordering(GraphView(g, cert.X), cert.ordering);
  return cert;
}

std::vector<std::string> verify_certificate(const Graph& g, const FanCertificate& cert) {
  std::vector<std::string> bad;
  const int n = g.vertex_count();
  if (cert.n != n) {
    bad.push_back("certificate is for " + std::to_string(cert.n) + " vertices but the graph has " + std::to_string(n));
    return bad;
  }
  if (cert.b < 1 || cert.b > std::max(n, 1)) bad.push_back("b = " + std::to_string(cert.b) + " is outside [1, n]");
  const int expect_len = cert.b >= 1 ? std::max((n + cert.b - 1) / cert.b - 1, 1) : 1;
  if (cert.path_len != expect_len) {
    bad.push_back("path length " + std::to_string(cert.path_len) + " differs from " + std::to_string(expect_len));
  }
  if (cert.fan_size != cert.path_len + 1) {
    bad.push_back("fan size " + std::to_string(cert.fan_size) + " is not path length + 1");
  }
  if (static_cast<int>(cert.X.size()) > cert.b) bad.push_back("X has more than b vertices");
  if (static_cast<int>(cert.mapping.size()) != n) {
    bad.push_back("mapping has " + std::to_string(cert.mapping.size()) + " entries for " + std::to_string(n) +
                  " vertices");
    return bad;
  }
  if (!bad.empty()) return bad;

  std::set<std::pair<int, int>> slots;
  for (int v = 0; v < n; ++v) {
    const auto [node, slot] = cert.mapping[v];
    if (node < 0 || node > cert.path_len || slot < 0 || slot >= cert.b) {
      bad.push_back("vertex " + std::to_string(v) + " maps to (" + std::to_string(node) + "," + std::to_string(slot) +
                    ") outside the blowup");
    } else if (!slots.insert(cert.mapping[v]).second) {
      bad.push_back("vertex " + std::to_string(v) + " shares slot (" + std::to_string(node) + "," +
                    std::to_string(slot) + ") with another vertex");
    }
  }
  for (const auto& [u, v] : g.edges()) {
    const int a = cert.mapping[u].first, c = cert.mapping[v].first;
    if (a == c || a == 0 || c == 0 || std::abs(a - c) == 1) continue;
    bad.push_back("edge " + pair_text(u, v) + " maps to path nodes " + std::to_string(a) + " and " +
                  std::to_string(c) + ", which are not adjacent in the fan");
  }

  std::vector<int> seen(n, 0);
  for (int s = 0; s < static_cast<int>(cert.X.size()); ++s) {
    const int v = cert.X[s];
    if (v < 0 || v >= n) {
      bad.push_back("X names vertex " + std::to_string(v) + " outside the graph");
      continue;
    }
    ++seen[v];
    if (cert.mapping[v] != std::pair<int, int>{0, s}) {
      bad.push_back("X vertex " + std::to_string(v) + " is not mapped to center slot " + std::to_string(s));
    }
  }
  for (int idx = 0; idx < static_cast<int>(cert.ordering.size()); ++idx) {
    const int v = cert.ordering[idx];
    if (v < 0 || v >= n) {
      bad.push_back("ordering names vertex " + std::to_string(v) + " outside the graph");
      continue;
    }
    ++seen[v];
    const std::pair<int, int> want{idx / cert.b + 1, idx % cert.b};
    if (cert.mapping[v] != want) {
      bad.push_back("ordering position " + std::to_string(idx) + " (vertex " + std::to_string(v) + ") should map to (" +
                    std::to_string(want.first) + "," + std::to_string(want.second) + ")");
    }
  }
  bool partition = true;
  for (int v = 0; v < n; ++v) {
    if (seen[v] != 1) {
      bad.push_back("vertex " + std::to_string(v) + " appears " + std::to_string(seen[v]) +
                    " times in X and the ordering");
      partition = false;
    }
  }
  if (partition) {
    const std::int64_t bw = bandwidth_of_ordering(GraphView(g, cert.X), cert.ordering);
    if (bw != cert.measured_bandwidth) {
      bad.push_back("declared bandwidth " + std::to_string(cert.measured_bandwidth) + " differs from measured " +
                    std::to_string(bw));
    }
    if (bw > cert.b) bad.push_back("bandwidth " + std::to_string(bw) + " exceeds b = " + std::to_string(cert.b));
  }
  return bad;
}

BlowupOrdering blowup_to_bandwidth(const Graph& g, const std::vector<std::pair<int, int>>& mapping, int b) {
  const int n = g.vertex_count();
  if (static_cast<int>(mapping.size()) != n) throw InputError("mapping does not cover the graph");
  if (b < 1) throw InputError("b must be positive");
  std::set<std::pair<int, int>> slots;
  for (int v = 0; v < n; ++v) {
    const auto [node, slot] = mapping[v];
    if (node < 0 || slot < 0 || slot >= b) throw InputError("vertex " + std::to_string(v) + " has an invalid slot");
    if (!slots.insert(mapping[v]).second) throw InputError("two vertices share a slot");
  }
  for (const auto& [u, v] : g.edges()) {
    const int a = mapping[u].first, c = mapping[v].first;
    if (!(a == c || a == 0 || c == 0 || std::abs(a - c) == 1)) {
      throw InputError("edge " + pair_text(u, v) + " is not an edge of the fan blowup");
    }
  }
  std::vector<int> center, rest;
  for (int v = 0; v < n; ++v) (mapping[v].first == 0 ? center : rest).push_back(v);
  std::sort(center.begin(), center.end(), [&](int u, int v) { return mapping[u] < mapping[v]; });
  std::sort(rest.begin(), rest.end(), [&](int u, int v) { return mapping[u] < mapping[v]; });
  BlowupOrdering out;
  out.X = std::move(center);
  out.ordering = std::move(rest);
  out.bandwidth = bandwidth_of_ordering(GraphView(g, out.X), out.ordering);
  if (out.bandwidth > 2 * static_cast<std::int64_t>(b) - 1) {
    throw ConstraintError("block ordering has bandwidth " + std::to_string(out.bandwidth) + " > 2b - 1");
  }
  return out;
}

}  // namespace fanband
