#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "fanband/graph.hpp"
#include "fanband/sparsifier.hpp"
#include "fanband/star_metric.hpp"

namespace fanband {

// Partition of H x P into cells H^delta_a x P^delta_b: bands of delta BFS layers
// of H offset by r_H, blocks of delta rows offset by r_P.
struct DecompInstance {
  int delta = 1;
  int r_H = 0;
  int r_P = 0;
  std::vector<int> band_of;      // per H vertex
  std::vector<int> band_comp;    // per H vertex: component of its band subgraph
  std::vector<Distance> exit_h;  // per H vertex: d_H to a vertex outside its band component

  int block_of(int row) const;
  RowInterval block_rows(int b) const;
  // d_{H x P}(v, complement of the cell component holding v)
  Distance boundary_distance(ProductVertex v) const;
};

DecompInstance delta_decompose(const Graph& h, const Layering& layering, int delta, int r_H, int r_P);

// Per-point view of the trimmed instance J for a fixed point list.
struct TrimmedInstance {
  std::vector<std::int64_t> i_label;  // I-component of each point
  std::vector<std::int64_t> j_label;  // J-component of each point
  std::vector<double> alpha;          // alpha of the J-component, uniform in [0,1)
  std::vector<std::int64_t> boundary; // d_{H x P}(v, complement of its I-component)

  double coordinate(std::size_t p) const { return (1.0 + alpha[p]) * static_cast<double>(boundary[p]); }
};

// Removes from every I-component C the cuts X_{i,j} whose strip contains C, and
// draws one alpha per resulting component from alpha_stream. Throws
// ConstraintError if a point off X would be removed.
TrimmedInstance trim_to_J(const DecompInstance& inst, const Graph& h, const StructuredSparsifier& sp,
                          const std::vector<ProductVertex>& points, std::uint64_t alpha_stream);

struct EmbeddingParams {
  int k = 2;
  double a = 193.0;
  std::uint64_t seed = 0;
  std::optional<int> dims_cap;  // exploratory: subsample repetitions per scale
};

struct Embedding {
  std::vector<int> ids;             // vertex id reported for each row
  std::vector<ProductVertex> points;
  int n = 0;                        // |V(G)| used in the dimension formula
  int scales = 0;                   // floor(log2 n) + 1
  int reps_full = 0;                // ceil(a k ln n)
  int reps = 0;                     // repetitions actually built per scale
  int k = 2;
  double a = 193.0;
  std::uint64_t seed = 0;
  bool certified = true;
  Eigen::MatrixXd raw;              // points x (scales * reps)

  int L() const { return scales * reps; }
  int L_full() const { return scales * reps_full; }
  double scale() const { return 1.0 / (2.0 * std::sqrt(static_cast<double>(L()))); }
  int column(int i, int j) const { return i * reps + j; }
};

// floor(1 + log2 n) * ceil(a k ln n)
std::int64_t embedding_dimension(int n, int k, double a);
int repetitions_per_scale(int n, int k, double a);

Embedding build_embedding(const std::vector<int>& ids, const std::vector<ProductVertex>& points, const StarMetric& sm,
                          const EmbeddingParams& params);

// Orders rows by their inner product with a random unit vector; ties by id.
Ordering project_order(const Embedding& emb, std::uint64_t seed);
Ordering order_by_projection(const std::vector<int>& ids, const Eigen::VectorXd& h);

struct DistortionVolumeReport {
  double max_contraction_ratio = 0;  // max d2(phi'(u), phi'(v)) / d*(u, v)
  double distortion = 0;             // max d*(u, v) / d2(phi'(u), phi'(v))
  double distortion_bound = 0;       // 1920 sqrt(2 floor(1 + log2 n))
  double zeta = 0;
  std::int64_t triples = 0;
  std::int64_t triples_passing = 0;
  double min_volume_ratio = 0;

  double passing_fraction() const { return triples == 0 ? 1.0 : static_cast<double>(triples_passing) / triples; }
};

DistortionVolumeReport distortion_volume_report(const Embedding& emb, const DistanceMatrix& dstar, int sample_size,
                                                std::uint64_t seed);

}  // namespace fanband
