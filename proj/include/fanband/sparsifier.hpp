#pragma once

#include <cstdint>
#include <vector>

#include "fanband/distance.hpp"
#include "fanband/graph.hpp"
#include "fanband/tree_decomposition.hpp"

namespace fanband {

struct BakerConfig {
  int t = 3;
  Rational D{1};
  Layering layering;
};

struct BakerCell {
  int i = 0;
  int j = 0;
  int slab_size = 0;       // |V(G+_{i,j})|
  std::int64_t c = 1;
  int width = -1;          // achieved width of the slab decomposition, -1 if not needed
  std::vector<int> removed;
};

struct BakerResult {
  std::vector<int> X;      // sorted vertex ids
  std::vector<BakerCell> cells;
  double t_eff = 0.0;      // max over decomposed cells of (width+1)/(3*2^i)
  int max_width = -1;

  // 18 * t_eff * n * log2(n) / D
  double size_bound(int n, const Rational& D) const;
};

// Dyadic slab sparsifier over a layering: for every scale i < floor(log2 n) and
// strip j, the widened slab is split by a unit-weight separator with
// c = ceil(|V(G+)| / (D 2^(i-1))).
BakerResult baker_sparsify(const Graph& g, const BakerConfig& cfg);

struct RowInterval {
  int lo = 0;
  int hi = -1;
  bool contains(int row) const { return lo <= row && row <= hi; }
  int size() const { return hi - lo + 1; }
};

struct ProductCell {
  std::vector<int> Y;      // sorted H vertices
  std::int64_t weight = 0; // xi_{i,j}(H)
  std::int64_t c = 1;
};

class StructuredSparsifier {
 public:
  StructuredSparsifier() = default;
  StructuredSparsifier(int g_vertex_count, int h_vertex_count, Rational D,
                       std::vector<std::vector<ProductCell>> cells);

  int g_vertex_count() const { return n_; }
  int h_vertex_count() const { return h_n_; }
  int N() const { return N_; }
  int log_N() const { return log_N_; }
  const Rational& D() const { return D_; }
  int strip_count(int i) const { return N_ >> i; }
  const ProductCell& cell(int i, int j) const { return cells_[i][j]; }
  const std::vector<int>& Y(int i, int j) const { return cells_[i][j].Y; }

  // P_{i,j} and P+_{i,j}; rows of the padded path run from -N+1 to 2N.
  RowInterval strip(int i, int j) const;
  RowInterval widened_strip(int i, int j) const;
  int first_row() const { return -N_ + 1; }
  int last_row() const { return 2 * N_; }

  bool in_X(ProductVertex v) const;
  // X_{i,j} = Y_{i,j} x P+_{i,j}; X is their union.
  std::vector<ProductVertex> X_cell(int i, int j) const;
  std::vector<ProductVertex> X() const;
  std::int64_t X_size() const;

 private:
  int n_ = 0;
  int h_n_ = 0;
  int N_ = 1;
  int log_N_ = 0;
  Rational D_{2};
  std::vector<std::vector<ProductCell>> cells_;
  std::vector<std::vector<char>> member_;  // member_[i][j * h_n_ + x]
};

// Requires every G vertex to lie in rows 1..N with N = 2^ceil(log2 n), and D >= 2.
StructuredSparsifier product_sparsify(const Graph& h, const TreeDecomposition& td,
                                      const std::vector<ProductVertex>& g_vertices, const Rational& D);

// |X| * D <= 18 (w+1) n (1 + log N), checked exactly.
bool product_size_bound_holds(const StructuredSparsifier& sp, int width);

int ceil_log2(std::int64_t n);
int floor_log2(std::int64_t n);

}  // namespace fanband
