#include "fanband/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "fanband/errors.hpp"
#include "fanband/random.hpp"
#include "fanband/volumes.hpp"

namespace fanband {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

constexpr std::int64_t kBlockOffset = std::int64_t{1} << 30;

}  // namespace

int DecompInstance::block_of(int row) const { return static_cast<int>(floor_div(row - r_P, delta)); }

RowInterval DecompInstance::block_rows(int b) const { return {r_P + b * delta, r_P + (b + 1) * delta - 1}; }

Distance DecompInstance::boundary_distance(ProductVertex v) const {
  const RowInterval rows = block_rows(block_of(v.row));
  const Distance vertical = std::min(v.row - rows.lo + 1, rows.hi - v.row + 1);
  return min(exit_h[v.h], vertical);
}

DecompInstance delta_decompose(const Graph& h, const Layering& layering, int delta, int r_H, int r_P) {
  if (delta < 1 || (delta & (delta - 1)) != 0) throw InputError("delta must be a power of two");
  if (r_H < 0 || r_H >= delta || r_P < 0 || r_P >= delta) throw InputError("offsets must lie in [0, delta)");
  const int hn = h.vertex_count();
  if (static_cast<int>(layering.layer_of.size()) != hn) throw InputError("layering does not match H");

  DecompInstance inst;
  inst.delta = delta;
  inst.r_H = r_H;
  inst.r_P = r_P;
  inst.band_of.resize(hn);
  for (int x = 0; x < hn; ++x) inst.band_of[x] = static_cast<int>(floor_div(layering.layer_of[x] - r_H, delta));

  inst.band_comp.assign(hn, -1);
  std::vector<int> queue;
  int comps = 0;
  for (int s = 0; s < hn; ++s) {
    if (inst.band_comp[s] >= 0) continue;
    inst.band_comp[s] = comps;
    queue.assign(1, s);
    for (std::size_t q = 0; q < queue.size(); ++q) {
      const int x = queue[q];
      for (int y : h.neighbors(x)) {
        if (inst.band_comp[y] < 0 && inst.band_of[y] == inst.band_of[x]) {
          inst.band_comp[y] = comps;
          queue.push_back(y);
        }
      }
    }
    ++comps;
  }

  // Multi-source BFS inside each band component from the vertices that touch another band.
  std::vector<int> dist(hn, -1);
  queue.clear();
  for (int x = 0; x < hn; ++x) {
    for (int y : h.neighbors(x)) {
      if (inst.band_of[y] != inst.band_of[x]) {
        dist[x] = 1;
        queue.push_back(x);
        break;
      }
    }
  }
  for (std::size_t q = 0; q < queue.size(); ++q) {
    const int x = queue[q];
    for (int y : h.neighbors(x)) {
      if (dist[y] < 0 && inst.band_of[y] == inst.band_of[x]) {
        dist[y] = dist[x] + 1;
        queue.push_back(y);
      }
    }
  }
  inst.exit_h.resize(hn);
  for (int x = 0; x < hn; ++x) inst.exit_h[x] = dist[x] < 0 ? Distance::infinity() : Distance(dist[x]);
  return inst;
}

TrimmedInstance trim_to_J(const DecompInstance& inst, const Graph& h, const StructuredSparsifier& sp,
                          const std::vector<ProductVertex>& points, std::uint64_t alpha_stream) {
  const int hn = h.vertex_count();
  const std::size_t np = points.size();
  TrimmedInstance out;
  out.i_label.resize(np);
  out.j_label.resize(np);
  out.alpha.resize(np);
  out.boundary.resize(np);

  std::vector<std::size_t> order(np);
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> block(np);
  for (std::size_t p = 0; p < np; ++p) block[p] = inst.block_of(points[p].row);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return block[a] < block[b]; });

  std::vector<int> cut_stamp(hn, -1), label_stamp(hn, -1), label(hn, -1);
  std::vector<int> queue;
  int stamp = 0;
  for (std::size_t start = 0; start < np;) {
    std::size_t stop = start;
    const int b = block[order[start]];
    while (stop < np && block[order[stop]] == b) ++stop;
    ++stamp;

    // Every cut whose widened strip contains all rows of this block.
    const RowInterval rows = inst.block_rows(b);
    for (int i = 0; i <= sp.log_N(); ++i) {
      const std::int64_t w = std::int64_t{1} << i;
      const std::int64_t j_hi = std::min<std::int64_t>(floor_div(rows.lo - 1, w) + 1, sp.strip_count(i) - 1);
      const std::int64_t j_lo = std::max<std::int64_t>(ceil_div(rows.hi, w) - 2, 0);
      for (std::int64_t j = j_lo; j <= j_hi; ++j) {
        for (int x : sp.Y(i, static_cast<int>(j))) cut_stamp[x] = stamp;
      }
    }

    for (std::size_t q = start; q < stop; ++q) {
      const std::size_t p = order[q];
      const ProductVertex v = points[p];
      if (cut_stamp[v.h] == stamp) {
        throw ConstraintError("point (" + std::to_string(v.h) + "," + std::to_string(v.row) +
                              ") off X is removed by a cut of its own component");
      }
      if (label_stamp[v.h] != stamp) {
        int least = v.h;
        queue.assign(1, v.h);
        label_stamp[v.h] = stamp;
        for (std::size_t k = 0; k < queue.size(); ++k) {
          const int x = queue[k];
          least = std::min(least, x);
          for (int y : h.neighbors(x)) {
            if (label_stamp[y] != stamp && cut_stamp[y] != stamp && inst.band_of[y] == inst.band_of[x]) {
              label_stamp[y] = stamp;
              queue.push_back(y);
            }
          }
        }
        for (int x : queue) label[x] = least;
      }
      const std::int64_t block_key = (static_cast<std::int64_t>(b) + kBlockOffset) * hn;
      out.i_label[p] = block_key + inst.band_comp[v.h];
      out.j_label[p] = block_key + label[v.h];
      out.alpha[p] = unit_interval_from_key(alpha_stream, static_cast<std::uint64_t>(out.j_label[p]));
      const Distance d = inst.boundary_distance(v);
      out.boundary[p] = d.value();
    }
    start = stop;
  }
  return out;
}

int repetitions_per_scale(int n, int k, double a) {
  if (n < 2) return 1;
  return static_cast<int>(std::ceil(a * k * std::log(static_cast<double>(n)) - 1e-12));
}

std::int64_t embedding_dimension(int n, int k, double a) {
  const int scales = floor_log2(std::max(1, n)) + 1;
  return static_cast<std::int64_t>(scales) * repetitions_per_scale(n, k, a);
}

Embedding build_embedding(const std::vector<int>& ids, const std::vector<ProductVertex>& points, const StarMetric& sm,
                          const EmbeddingParams& params) {
  if (params.k < 2) throw InputError("embedding needs k >= 2");
  if (!(params.a > 0)) throw InputError("embedding needs a > 0");
  if (ids.size() != points.size()) throw InputError("ids and points differ in length");
  if (points.empty()) throw InputError("embedding of an empty point set");
  if (params.dims_cap && *params.dims_cap < 1) throw InputError("dims cap must be positive");

  Embedding emb;
  emb.ids = ids;
  emb.points = points;
  emb.n = std::max(1, sm.sparsifier().g_vertex_count());
  emb.k = params.k;
  emb.a = params.a;
  emb.seed = params.seed;
  emb.scales = floor_log2(emb.n) + 1;
  emb.reps_full = repetitions_per_scale(emb.n, params.k, params.a);
  emb.reps = emb.reps_full;
  if (params.dims_cap) {
    emb.reps = std::clamp(*params.dims_cap / emb.scales, 1, emb.reps_full);
    emb.certified = false;
  }

  const Graph& h = sm.h();
  const Layering layering = bfs_layering(h, 0);
  const StreamSplitter splitter(params.seed);
  emb.raw.resize(static_cast<Eigen::Index>(points.size()), emb.L());
  for (int i = 0; i < emb.scales; ++i) {
    const int delta = 1 << i;
    for (int j = 0; j < emb.reps; ++j) {
      const std::string label = "inst/i=" + std::to_string(i) + "/j=" + std::to_string(j + 1);
      auto rng = splitter.stream(label + "/offsets");
      std::uniform_int_distribution<int> offset(0, delta - 1);
      const int r_H = offset(rng);
      const int r_P = offset(rng);
      const auto inst = delta_decompose(h, layering, delta, r_H, r_P);
      const auto trimmed = trim_to_J(inst, h, sm.sparsifier(), points, splitter.stream_seed(label + "/alpha"));
      const int col = emb.column(i, j);
      for (std::size_t p = 0; p < points.size(); ++p) emb.raw(static_cast<Eigen::Index>(p), col) = trimmed.coordinate(p);
    }
  }
  return emb;
}

Ordering order_by_projection(const std::vector<int>& ids, const Eigen::VectorXd& h) {
  std::vector<std::size_t> idx(ids.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (h[a] != h[b]) return h[a] < h[b];
    return ids[a] < ids[b];
  });
  Ordering out;
  out.reserve(ids.size());
  for (auto p : idx) out.push_back(ids[p]);
  return out;
}

Ordering project_order(const Embedding& emb, std::uint64_t seed) {
  auto rng = StreamSplitter(seed).stream("project");
  std::normal_distribution<double> gauss;
  Eigen::VectorXd r(emb.raw.cols());
  for (Eigen::Index c = 0; c < r.size(); ++c) r[c] = gauss(rng);
  const double norm = r.norm();
  if (norm > 0) r /= norm;
  const Eigen::VectorXd h = emb.raw * r;
  return order_by_projection(emb.ids, h);
}

DistortionVolumeReport distortion_volume_report(const Embedding& emb, const DistanceMatrix& dstar, int sample_size,
                                                std::uint64_t seed) {
  const int np = static_cast<int>(emb.raw.rows());
  if (dstar.size() != np) throw InputError("distance table does not match the embedding");
  DistortionVolumeReport r;
  r.distortion_bound = 1920.0 * std::sqrt(2.0 * emb.scales);
  r.zeta = std::sqrt(static_cast<double>(emb.reps)) / (640.0 * std::sqrt(2.0));
  const double s = emb.scale();
  for (int u = 0; u < np; ++u) {
    for (int v = u + 1; v < np; ++v) {
      const Distance d = dstar(u, v);
      if (d.is_infinite()) continue;
      const double e = (emb.raw.row(u) - emb.raw.row(v)).norm() * s;
      const double dv = static_cast<double>(d.value());
      r.max_contraction_ratio = std::max(r.max_contraction_ratio, e / dv);
      r.distortion = std::max(r.distortion, e > 0 ? dv / e : std::numeric_limits<double>::infinity());
    }
  }
  if (np >= 3 && sample_size > 0) {
    std::mt19937_64 rng(StreamSplitter(seed).stream_seed("volume-triples"));
    std::uniform_int_distribution<int> pick(0, np - 1);
    const double unit = 2.0 * r.zeta / 3.0;
    r.min_volume_ratio = std::numeric_limits<double>::infinity();
    Eigen::MatrixXd pts(3, emb.raw.cols());
    Eigen::Matrix3d d;
    for (int t = 0; t < sample_size; ++t) {
      int K[3];
      K[0] = pick(rng);
      do K[1] = pick(rng); while (K[1] == K[0]);
      do K[2] = pick(rng); while (K[2] == K[0] || K[2] == K[1]);
      for (int a = 0; a < 3; ++a) {
        pts.row(a) = emb.raw.row(K[a]);
        for (int b = 0; b < 3; ++b) d(a, b) = static_cast<double>(dstar(K[a], K[b]).value());
      }
      const double evol = euclidean_volume(pts);
      const double ratio = evol * factorial(2) / (tree_volume(d) * unit * unit);
      ++r.triples;
      if (ratio >= 1.0) ++r.triples_passing;
      r.min_volume_ratio = std::min(r.min_volume_ratio, ratio);
    }
  }
  return r;
}

}  // namespace fanband
