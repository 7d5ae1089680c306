#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "fanband/errors.hpp"

namespace fanband {

// Throws InputError unless d is square, symmetric, zero on the diagonal,
// positive off it and satisfies the triangle inequality up to rel_tol.
template <typename Derived>
void validate_finite_metric(const Eigen::MatrixBase<Derived>& d, double rel_tol = 1e-12) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index k = d.rows();
  if (d.cols() != k) throw InputError("distance matrix is not square");
  for (Eigen::Index a = 0; a < k; ++a) {
    if (d(a, a) != Scalar(0)) throw InputError("nonzero diagonal entry in distance matrix");
    for (Eigen::Index b = 0; b < k; ++b) {
      if (d(a, b) != d(b, a)) throw InputError("distance matrix is not symmetric");
      if (a != b && !(d(a, b) > Scalar(0))) throw InputError("zero distance between distinct points");
      for (Eigen::Index c = 0; c < k; ++c) {
        const double lhs = static_cast<double>(d(a, c));
        const double rhs = static_cast<double>(d(a, b) + d(b, c));
        if (lhs > rhs * (1 + rel_tol)) throw InputError("distance matrix violates the triangle inequality");
      }
    }
  }
}

// Product of the edge weights of a minimum spanning tree of the complete
// graph weighted by d (Prim, lowest index on ties). A single point gives 1.
template <typename Derived>
typename Derived::Scalar tree_volume(const Eigen::MatrixBase<Derived>& d) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index k = d.rows();
  if (k < 1) throw InputError("tree volume of an empty point set");
  std::vector<char> in_tree(k, 0);
  std::vector<Scalar> best(k, std::numeric_limits<Scalar>::max());
  in_tree[0] = 1;
  for (Eigen::Index v = 1; v < k; ++v) best[v] = d(0, v);
  Scalar product(1);
  for (Eigen::Index step = 1; step < k; ++step) {
    Eigen::Index pick = -1;
    for (Eigen::Index v = 0; v < k; ++v) {
      if (!in_tree[v] && (pick < 0 || best[v] < best[pick])) pick = v;
    }
    if (!(best[pick] > Scalar(0))) throw InputError("degenerate metric: zero distance between distinct points");
    product *= best[pick];
    in_tree[pick] = 1;
    for (Eigen::Index v = 0; v < k; ++v) {
      if (!in_tree[v]) best[v] = std::min(best[v], d(pick, v));
    }
  }
  return product;
}

inline double factorial(int m) {
  double f = 1;
  for (int i = 2; i <= m; ++i) f *= i;
  return f;
}

// (k-1)-dimensional volume of the simplex spanned by the rows of pts (k x L),
// from the Gram determinant of the edge vectors at the first point. More
// points than L + 1 span a degenerate simplex of volume 0.
template <typename Derived>
typename Derived::Scalar euclidean_volume(const Eigen::MatrixBase<Derived>& pts) {
  using Scalar = typename Derived::Scalar;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Eigen::Index k = pts.rows();
  if (k < 1) throw InputError("volume of an empty point set");
  if (k > pts.cols() + 1) return Scalar(0);
  if (k == 1) return Scalar(1);
  const Mat edges = pts.bottomRows(k - 1).rowwise() - pts.row(0);
  const Mat gram = edges * edges.transpose();
  const Scalar det = gram.determinant();
  return std::sqrt(std::max(det, Scalar(0))) / static_cast<Scalar>(factorial(static_cast<int>(k) - 1));
}

template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> pairwise_distances(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& pts) {
  const Eigen::Index k = pts.rows();
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> d(k, k);
  for (Eigen::Index a = 0; a < k; ++a) {
    for (Eigen::Index b = 0; b < k; ++b) d(a, b) = (pts.row(a) - pts.row(b)).norm();
  }
  return d;
}

// Bounds on the ideal volume: tvol/((k-1)! 2^((k-2)/2)) <= ivol <= tvol/(k-1)!.
template <typename Derived>
std::pair<double, double> ivol_sandwich(const Eigen::MatrixBase<Derived>& d) {
  const Eigen::Index k = d.rows();
  if (k < 2) throw InputError("volume sandwich needs at least two points");
  const double upper = static_cast<double>(tree_volume(d)) / factorial(static_cast<int>(k) - 1);
  const double lower = upper / std::pow(2.0, (static_cast<double>(k) - 2) / 2);
  return {lower, upper};
}

inline double harmonic_number(int n) {
  double h = 0;
  for (int i = 1; i <= n; ++i) h += 1.0 / i;
  return h;
}

struct ReciprocalSumReport {
  double lhs = 0;
  double rhs = 0;
  bool ok = false;
  double margin() const { return rhs - lhs; }
};

// Sum of 1/tvol over all k-subsets against n (D H_n / 2)^(k-1), non-strict.
template <typename Derived>
ReciprocalSumReport reciprocal_sum_check(const Eigen::MatrixBase<Derived>& d, double D, int k) {
  using Scalar = typename Derived::Scalar;
  const int n = static_cast<int>(d.rows());
  if (n > 14) throw InputError("reciprocal sum enumeration is limited to 14 points");
  if (k < 2 || k > n) throw InputError("subset size must lie in [2, n]");
  ReciprocalSumReport r;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> sub(k, k);
  while (true) {
    for (int a = 0; a < k; ++a) {
      for (int b = 0; b < k; ++b) sub(a, b) = d(idx[a], idx[b]);
    }
    r.lhs += 1.0 / static_cast<double>(tree_volume(sub));
    int p = k - 1;
    while (p >= 0 && idx[p] == n - k + p) --p;
    if (p < 0) break;
    ++idx[p];
    for (int q = p + 1; q < k; ++q) idx[q] = idx[q - 1] + 1;
  }
  r.rhs = n * std::pow(D * harmonic_number(n) / 2, k - 1);
  r.ok = r.lhs <= r.rhs;
  return r;
}

// Largest per-point reciprocal distance sum; bounded by D H_n for local density D.
template <typename Derived>
double max_reciprocal_row_sum(const Eigen::MatrixBase<Derived>& d) {
  double best = 0;
  for (Eigen::Index x = 0; x < d.rows(); ++x) {
    double s = 0;
    for (Eigen::Index y = 0; y < d.cols(); ++y) {
      if (y != x) s += 1.0 / static_cast<double>(d(x, y));
    }
    best = std::max(best, s);
  }
  return best;
}

}  // namespace fanband
