#include "fanband/sparsifier.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fanband/errors.hpp"

namespace fanband {

int ceil_log2(std::int64_t n) {
  int k = 0;
  while ((std::int64_t{1} << k) < n) ++k;
  return k;
}

int floor_log2(std::int64_t n) {
  int k = 0;
  while ((std::int64_t{2} << k) <= n) ++k;
  return k;
}

namespace {

// ceil(weight / (2^(i-1) D)) computed exactly, never below 1.
std::int64_t separator_count(std::int64_t weight, int i, const Rational& D) {
  const Rational denom = Rational(std::int64_t{1} << i, 2) * D;
  return std::max<std::int64_t>(1, (Rational(weight) / denom).ceil());
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

double BakerResult::size_bound(int n, const Rational& D) const {
  if (n <= 1) return 0.0;
  return 18.0 * t_eff * n * std::log2(static_cast<double>(n)) / D.to_double();
}

BakerResult baker_sparsify(const Graph& g, const BakerConfig& cfg) {
  const int n = g.vertex_count();
  if (cfg.D < Rational(1) || (n > 1 && cfg.D > Rational(n))) {
    throw InputError("D must lie in [1, n]; got " + cfg.D.to_string());
  }
  if (cfg.t < 1) throw InputError("Baker parameter t must be positive");
  BakerResult out;
  if (n <= 1) return out;
  if (!cfg.layering.valid_for(g)) throw InputError("layering is not valid for the graph");

  const int layers = cfg.layering.layer_count();
  std::vector<std::vector<int>> by_layer(layers);
  for (int v = 0; v < n; ++v) {
    const int l = cfg.layering.layer_of[v];
    if (l < 0) throw InputError("layering leaves vertex " + std::to_string(v) + " unassigned");
    by_layer[l].push_back(v);
  }

  std::vector<char> in_X(n, 0);
  const int scales = floor_log2(n);
  for (int i = 0; i < scales; ++i) {
    const int h = 1 << i;
    const int strips = (layers + h - 1) / h;
    for (int j = 0; j < strips; ++j) {
      std::vector<int> slab;
      const int lo = std::max(0, (j - 1) * h);
      const int hi = std::min(layers - 1, (j + 2) * h - 1);
      for (int l = lo; l <= hi; ++l) slab.insert(slab.end(), by_layer[l].begin(), by_layer[l].end());
      if (slab.empty()) continue;
      std::sort(slab.begin(), slab.end());

      BakerCell cell;
      cell.i = i;
      cell.j = j;
      cell.slab_size = static_cast<int>(slab.size());
      cell.c = separator_count(cell.slab_size, i, cfg.D);
      if (cell.c > 1) {
        const auto sub = induced_subgraph(g, slab);
        const auto td = minfill_decomposition(sub.graph);
        cell.width = td.width();
        const std::vector<std::int64_t> unit(sub.graph.vertex_count(), 1);
        const auto sep = weighted_separator(sub.graph, td, unit, cell.c);
        for (int v : sep.vertices) {
          cell.removed.push_back(sub.to_host[v]);
          in_X[sub.to_host[v]] = 1;
        }
        out.max_width = std::max(out.max_width, cell.width);
        out.t_eff = std::max(out.t_eff, (cell.width + 1) / (3.0 * h));
      }
      out.cells.push_back(std::move(cell));
    }
  }
  for (int v = 0; v < n; ++v) {
    if (in_X[v]) out.X.push_back(v);
  }
  return out;
}

StructuredSparsifier::StructuredSparsifier(int g_vertex_count, int h_vertex_count, Rational D,
                                           std::vector<std::vector<ProductCell>> cells)
    : n_(g_vertex_count), h_n_(h_vertex_count), D_(D), cells_(std::move(cells)) {
  log_N_ = ceil_log2(std::max(1, n_));
  N_ = 1 << log_N_;
  if (static_cast<int>(cells_.size()) != log_N_ + 1) throw InputError("sparsifier has the wrong number of scales");
  member_.resize(cells_.size());
  for (int i = 0; i <= log_N_; ++i) {
    if (static_cast<int>(cells_[i].size()) != strip_count(i)) {
      throw InputError("sparsifier scale " + std::to_string(i) + " has the wrong number of strips");
    }
    member_[i].assign(static_cast<std::size_t>(strip_count(i)) * h_n_, 0);
    for (int j = 0; j < strip_count(i); ++j) {
      auto& Y = cells_[i][j].Y;
      std::sort(Y.begin(), Y.end());
      Y.erase(std::unique(Y.begin(), Y.end()), Y.end());
      for (int x : Y) {
        if (x < 0 || x >= h_n_) throw InputError("sparsifier names H vertex " + std::to_string(x));
        member_[i][static_cast<std::size_t>(j) * h_n_ + x] = 1;
      }
    }
  }
}

RowInterval StructuredSparsifier::strip(int i, int j) const {
  const int h = 1 << i;
  return {j * h + 1, (j + 1) * h};
}

RowInterval StructuredSparsifier::widened_strip(int i, int j) const {
  const int h = 1 << i;
  return {(j - 1) * h + 1, (j + 2) * h};
}

bool StructuredSparsifier::in_X(ProductVertex v) const {
  if (v.h < 0 || v.h >= h_n_) return false;
  for (int i = 0; i <= log_N_; ++i) {
    const std::int64_t js = floor_div(v.row - 1, std::int64_t{1} << i);
    for (std::int64_t j = js - 1; j <= js + 1; ++j) {
      if (j < 0 || j >= strip_count(i)) continue;
      if (!widened_strip(i, static_cast<int>(j)).contains(v.row)) continue;
      if (member_[i][static_cast<std::size_t>(j) * h_n_ + v.h]) return true;
    }
  }
  return false;
}

std::vector<ProductVertex> StructuredSparsifier::X_cell(int i, int j) const {
  std::vector<ProductVertex> out;
  const auto rows = widened_strip(i, j);
  for (int x : Y(i, j)) {
    for (int r = rows.lo; r <= rows.hi; ++r) out.push_back({x, r});
  }
  return out;
}

std::vector<ProductVertex> StructuredSparsifier::X() const {
  std::vector<ProductVertex> out;
  for (int i = 0; i <= log_N_; ++i) {
    for (int j = 0; j < strip_count(i); ++j) {
      auto part = X_cell(i, j);
      out.insert(out.end(), part.begin(), part.end());
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::int64_t StructuredSparsifier::X_size() const { return static_cast<std::int64_t>(X().size()); }

StructuredSparsifier product_sparsify(const Graph& h, const TreeDecomposition& td,
                                      const std::vector<ProductVertex>& g_vertices, const Rational& D) {
  if (D < Rational(2)) throw InputError("product sparsifier needs D >= 2; got " + D.to_string());
  const int n = static_cast<int>(g_vertices.size());
  const int log_N = ceil_log2(std::max(1, n));
  const int N = 1 << log_N;
  const int hn = h.vertex_count();

  std::vector<std::vector<int>> by_row(N + 1);
  for (const auto& v : g_vertices) {
    if (v.row < 1 || v.row > N) {
      throw InputError("G vertex (" + std::to_string(v.h) + "," + std::to_string(v.row) + ") lies outside rows 1.." +
                       std::to_string(N));
    }
    h.check_vertex(v.h);
    by_row[v.row].push_back(v.h);
  }

  std::vector<std::vector<ProductCell>> cells(log_N + 1);
  std::vector<std::int64_t> xi(hn);
  for (int i = 0; i <= log_N; ++i) {
    const int strips = N >> i;
    cells[i].resize(strips);
    for (int j = 0; j < strips; ++j) {
      const int lo = std::max(1, (j - 1) * (1 << i) + 1);
      const int hi = std::min(N, (j + 2) * (1 << i));
      std::fill(xi.begin(), xi.end(), 0);
      std::int64_t total = 0;
      for (int r = lo; r <= hi; ++r) {
        for (int x : by_row[r]) {
          ++xi[x];
          ++total;
        }
      }
      ProductCell& cell = cells[i][j];
      cell.weight = total;
      cell.c = separator_count(total, i, D);
      if (cell.c > 1) cell.Y = weighted_separator(h, td, xi, cell.c).vertices;
    }
  }
  return StructuredSparsifier(n, hn, D, std::move(cells));
}

bool product_size_bound_holds(const StructuredSparsifier& sp, int width) {
  const Rational lhs = Rational(sp.X_size()) * sp.D();
  const Rational rhs(std::int64_t{18} * (width + 1) * sp.g_vertex_count() * (1 + sp.log_N()));
  return lhs <= rhs;
}

}  // namespace fanband
