#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "fanband/errors.hpp"
#include "fanband/volumes.hpp"

using namespace fanband;
using Eigen::MatrixXd;

namespace {

// Minimum over all labelled spanning trees (Pruefer sequences) of the edge-weight product.
double spanning_tree_minimum(const MatrixXd& d) {
  const int k = static_cast<int>(d.rows());
  if (k == 1) return 1;
  if (k == 2) return d(0, 1);
  std::vector<int> seq(k - 2, 0);
  double best = std::numeric_limits<double>::infinity();
  while (true) {
    std::vector<int> deg(k, 1);
    for (int s : seq) ++deg[s];
    double prod = 1;
    for (int s : seq) {
      int leaf = 0;
      while (deg[leaf] != 1) ++leaf;
      prod *= d(leaf, s);
      --deg[leaf];
      --deg[s];
    }
    int u = -1, v = -1;
    for (int x = 0; x < k; ++x) {
      if (deg[x] == 1) (u < 0 ? u : v) = x;
    }
    prod *= d(u, v);
    best = std::min(best, prod);
    int p = k - 3;
    while (p >= 0 && seq[p] == k - 1) seq[p--] = 0;
    if (p < 0) break;
    ++seq[p];
  }
  return best;
}

MatrixXd random_points(int k, int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0, 1);
  MatrixXd p(k, dim);
  for (int r = 0; r < k; ++r) {
    for (int c = 0; c < dim; ++c) p(r, c) = g(rng);
  }
  return p;
}

// Shortest-path closure of random positive integer weights on the complete graph.
MatrixXd random_metric(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> w(1, 9);
  MatrixXd d(n, n);
  for (int a = 0; a < n; ++a) {
    d(a, a) = 0;
    for (int b = a + 1; b < n; ++b) d(a, b) = d(b, a) = w(rng);
  }
  for (int m = 0; m < n; ++m) {
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) d(a, b) = std::min(d(a, b), d(a, m) + d(m, b));
    }
  }
  return d;
}

}  // namespace

TEST_CASE("tree volume examples") {
  MatrixXd two(2, 2);
  two << 0, 5, 5, 0;
  CHECK(tree_volume(two) == 5);

  MatrixXd three(3, 3);
  three << 0, 1, 2, 1, 0, 3, 2, 3, 0;
  CHECK(tree_volume(three) == 2);

  MatrixXd unit = MatrixXd::Ones(4, 4) - MatrixXd::Identity(4, 4);
  CHECK(tree_volume(unit) == 1);
  CHECK(tree_volume(MatrixXd::Zero(1, 1)) == 1);
  CHECK_THROWS_AS(tree_volume(MatrixXd::Zero(2, 2)), InputError);
}

TEST_CASE("tree volume matches spanning tree enumeration") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int k = 2 + trial % 5;
    const MatrixXd d = random_metric(k, rng);
    CHECK(tree_volume(d) == doctest::Approx(spanning_tree_minimum(d)).epsilon(1e-12));
  }
}

TEST_CASE("euclidean volume examples") {
  MatrixXd tri(3, 2);
  tri << 0, 0, 1, 0, 0, 1;
  CHECK(euclidean_volume(tri) == doctest::Approx(0.5));
  MatrixXd seg(2, 2);
  seg << 0, 0, 2, 0;
  CHECK(euclidean_volume(seg) == doctest::Approx(2));
  MatrixXd line(3, 2);
  line << 0, 0, 1, 1, 2, 2;
  CHECK(euclidean_volume(line) == doctest::Approx(0).epsilon(1e-12));
  MatrixXd cube(4, 3);
  cube << 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1;
  CHECK(euclidean_volume(cube) == doctest::Approx(1.0 / 6));
  CHECK(euclidean_volume(MatrixXd::Random(4, 2)) == 0);
  CHECK_THROWS_AS(euclidean_volume(MatrixXd(0, 2)), InputError);
}

TEST_CASE("ivol sandwich examples") {
  MatrixXd two(2, 2);
  two << 0, 5, 5, 0;
  CHECK(ivol_sandwich(two).first == doctest::Approx(5));
  CHECK(ivol_sandwich(two).second == doctest::Approx(5));

  MatrixXd three(3, 3);
  three << 0, 1, 2, 1, 0, 3, 2, 3, 0;
  CHECK(ivol_sandwich(three).first == doctest::Approx(2 / (2 * std::sqrt(2.0))));
  CHECK(ivol_sandwich(three).second == doctest::Approx(1));

  MatrixXd four(4, 4);
  four << 0, 1, 2, 3, 1, 0, 2, 3, 2, 2, 0, 3, 3, 3, 3, 0;
  REQUIRE(tree_volume(four) == 6);
  CHECK(ivol_sandwich(four).first == doctest::Approx(0.5));
  CHECK(ivol_sandwich(four).second == doctest::Approx(1));
}

TEST_CASE("euclidean volume never exceeds tree volume over (k-1)!") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 300; ++trial) {
    const int k = 2 + trial % 3;
    const MatrixXd p = random_points(k, 2 + trial % 4, rng);
    const MatrixXd d = pairwise_distances<double>(p);
    CHECK(euclidean_volume(p) <= ivol_sandwich(d).second * (1 + 1e-9));
  }
}

TEST_CASE("reciprocal sum examples") {
  MatrixXd pair(2, 2);
  pair << 0, 1, 1, 0;
  const auto r2 = reciprocal_sum_check(pair, 1, 2);
  CHECK(r2.lhs == doctest::Approx(1));
  CHECK(r2.rhs == doctest::Approx(1.5));
  CHECK(r2.ok);

  const MatrixXd tri = MatrixXd::Ones(3, 3) - MatrixXd::Identity(3, 3);
  const auto r3 = reciprocal_sum_check(tri, 2, 2);
  CHECK(r3.lhs == doctest::Approx(3));
  CHECK(r3.rhs == doctest::Approx(5.5));
  CHECK(r3.ok);

  for (int n = 2; n <= 12; ++n) {
    MatrixXd path(n, n);
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) path(a, b) = std::abs(a - b);
    }
    for (int k = 2; k <= std::min(n, 4); ++k) CHECK(reciprocal_sum_check(path, 2, k).ok);
    CHECK(max_reciprocal_row_sum(path) <= 2 * harmonic_number(n) + 1e-12);
  }
  CHECK_THROWS_AS(reciprocal_sum_check(MatrixXd::Zero(15, 15), 1, 2), InputError);
  CHECK_THROWS_AS(reciprocal_sum_check(pair, 1, 3), InputError);
}

TEST_CASE("finite metric validation") {
  MatrixXd bad(3, 3);
  bad << 0, 1, 5, 1, 0, 1, 5, 1, 0;
  CHECK_THROWS_AS(validate_finite_metric(bad), InputError);
  MatrixXd asym(2, 2);
  asym << 0, 1, 2, 0;
  CHECK_THROWS_AS(validate_finite_metric(asym), InputError);
  std::mt19937_64 rng(3);
  CHECK_NOTHROW(validate_finite_metric(random_metric(8, rng)));
}
