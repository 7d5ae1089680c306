#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fanband/graph.hpp"
#include "fanband/sparsifier.hpp"

namespace fanband {

// Shortest walk in the path that starts at row uP, leaves [lo, hi] and ends at vP.
// Throws InputError if either row is outside the interval.
Distance interval_detour(int uP, int vP, int lo, int hi);

// The distance d* on (H x P) - X: the product distance raised by a detour for
// every strip whose cut separates the two points.
class StarMetric {
 public:
  StarMetric(const Graph& h, StructuredSparsifier sp);

  const Graph& h() const { return h_; }
  const StructuredSparsifier& sparsifier() const { return sp_; }
  const DistanceMatrix& h_distances() const { return dh_; }

  // Label of x in H - Y_{i,j}, or -1 when x is in Y_{i,j}.
  int component(int i, int j, int x) const { return comp_[i][static_cast<std::size_t>(j) * h_.vertex_count() + x]; }

  Distance product(ProductVertex u, ProductVertex v) const;
  Distance d_ij(int i, int j, ProductVertex u, ProductVertex v) const;
  // Throws InputError if u or v lies in X.
  Distance operator()(ProductVertex u, ProductVertex v) const;

 private:
  Graph h_;
  StructuredSparsifier sp_;
  DistanceMatrix dh_;
  std::vector<std::vector<int>> comp_;
};

// All pairwise d* values of a point list.
DistanceMatrix star_distance_table(const StarMetric& sm, const std::vector<ProductVertex>& points);

struct MetricAxiomReport {
  std::int64_t triples_checked = 0;
  std::int64_t identity_violations = 0;
  std::int64_t symmetry_violations = 0;
  std::int64_t triangle_violations = 0;
  std::string first_violation;

  bool ok() const { return identity_violations == 0 && symmetry_violations == 0 && triangle_violations == 0; }
};

// Exhaustive over all ordered triples, or over `samples` random triples when given.
MetricAxiomReport verify_metric_axioms(const DistanceMatrix& d, std::optional<std::int64_t> samples = std::nullopt,
                                       std::uint64_t seed = 0);
MetricAxiomReport verify_metric_axioms(const StarMetric& sm, const std::vector<ProductVertex>& points,
                                       std::optional<std::int64_t> samples = std::nullopt, std::uint64_t seed = 0);

// max over points x and realized radii r > 0 of (|B(x, r)| - 1) / r; 0 for a single point.
Rational metric_local_density(const DistanceMatrix& d);

}  // namespace fanband
