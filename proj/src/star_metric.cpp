#include "fanband/star_metric.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "fanband/errors.hpp"

namespace fanband {

Distance interval_detour(int uP, int vP, int lo, int hi) {
  if (uP < lo || uP > hi || vP < lo || vP > hi) {
    throw InputError("rows " + std::to_string(uP) + "," + std::to_string(vP) + " are not inside [" +
                     std::to_string(lo) + "," + std::to_string(hi) + "]");
  }
  const std::int64_t below = (uP - lo + 1) + (vP - lo + 1);
  const std::int64_t above = (hi + 1 - uP) + (hi + 1 - vP);
  return std::min(below, above);
}

StarMetric::StarMetric(const Graph& h, StructuredSparsifier sp) : h_(h), sp_(std::move(sp)), dh_(h_) {
  if (sp_.h_vertex_count() != h_.vertex_count()) throw InputError("sparsifier was built for a different H");
  const int hn = h_.vertex_count();
  const std::vector<int> whole = connected_components(h_).label;
  comp_.resize(sp_.log_N() + 1);
  for (int i = 0; i <= sp_.log_N(); ++i) {
    comp_[i].assign(static_cast<std::size_t>(sp_.strip_count(i)) * hn, -1);
    for (int j = 0; j < sp_.strip_count(i); ++j) {
      const auto& Y = sp_.Y(i, j);
      int* labels = comp_[i].data() + static_cast<std::size_t>(j) * hn;
      if (Y.empty()) {
        std::copy(whole.begin(), whole.end(), labels);
      } else {
        const auto c = connected_components(GraphView(h_, Y));
        std::copy(c.label.begin(), c.label.end(), labels);
      }
    }
  }
}

Distance StarMetric::product(ProductVertex u, ProductVertex v) const {
  return product_distance(dh_(u.h, v.h), Distance(std::abs(u.row - v.row)));
}

Distance StarMetric::d_ij(int i, int j, ProductVertex u, ProductVertex v) const {
  const RowInterval plus = sp_.widened_strip(i, j);
  if (!plus.contains(u.row) || !plus.contains(v.row)) return 0;
  const int cu = component(i, j, u.h);
  const int cv = component(i, j, v.h);
  if (cu == cv) return 0;
  const bool below = plus.lo - 1 >= sp_.first_row();
  const bool above = plus.hi + 1 <= sp_.last_row();
  if (below && above) return interval_detour(u.row, v.row, plus.lo, plus.hi);
  if (below) return Distance((u.row - plus.lo + 1) + (v.row - plus.lo + 1));
  if (above) return Distance((plus.hi + 1 - u.row) + (plus.hi + 1 - v.row));
  return Distance::infinity();
}

Distance StarMetric::operator()(ProductVertex u, ProductVertex v) const {
  if (sp_.in_X(u) || sp_.in_X(v)) throw InputError("d* is only defined off X");
  if (u == v) return 0;
  Distance best = product(u, v);
  for (int i = 0; i <= sp_.log_N(); ++i) {
    const int h = 1 << i;
    const int js = (u.row - 1) >= 0 ? (u.row - 1) / h : -((h - u.row) / h);
    for (int j = std::max(0, js - 1); j <= std::min(sp_.strip_count(i) - 1, js + 1); ++j) {
      best = max(best, d_ij(i, j, u, v));
    }
  }
  return best;
}

DistanceMatrix star_distance_table(const StarMetric& sm, const std::vector<ProductVertex>& points) {
  for (const auto& p : points) {
    if (sm.sparsifier().in_X(p)) throw InputError("point lies in X");
  }
  std::vector<Distance> upper(points.size() * points.size());
  const std::size_t n = points.size();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) upper[a * n + b] = sm(points[a], points[b]);
  }
  return DistanceMatrix::tabulate(static_cast<int>(n), [&](int a, int b) {
    if (a == b) return Distance(0);
    return a < b ? upper[a * n + b] : upper[static_cast<std::size_t>(b) * n + a];
  });
}

namespace {

void note(MetricAxiomReport& r, const std::string& what) {
  if (r.first_violation.empty()) r.first_violation = what;
}

void check_triple(const DistanceMatrix& d, int a, int b, int c, MetricAxiomReport& r) {
  ++r.triples_checked;
  if (d(a, c) > d(a, b) + d(b, c)) {
    ++r.triangle_violations;
    std::ostringstream os;
    os << "triangle " << a << "," << b << "," << c << ": " << d(a, c) << " > " << d(a, b) << " + " << d(b, c);
    note(r, os.str());
  }
}

}  // namespace

MetricAxiomReport verify_metric_axioms(const DistanceMatrix& d, std::optional<std::int64_t> samples,
                                       std::uint64_t seed) {
  MetricAxiomReport r;
  const int n = d.size();
  for (int a = 0; a < n; ++a) {
    if (d(a, a) != Distance(0)) {
      ++r.identity_violations;
      note(r, "nonzero self distance at " + std::to_string(a));
    }
    for (int b = a + 1; b < n; ++b) {
      if (d(a, b) != d(b, a)) {
        ++r.symmetry_violations;
        note(r, "asymmetric pair " + std::to_string(a) + "," + std::to_string(b));
      }
      if (d(a, b) == Distance(0)) {
        ++r.identity_violations;
        note(r, "zero distance between distinct points " + std::to_string(a) + "," + std::to_string(b));
      }
    }
  }
  if (n == 0) return r;
  if (samples) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (std::int64_t s = 0; s < *samples; ++s) check_triple(d, pick(rng), pick(rng), pick(rng), r);
  } else {
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        for (int c = 0; c < n; ++c) check_triple(d, a, b, c, r);
      }
    }
  }
  return r;
}

MetricAxiomReport verify_metric_axioms(const StarMetric& sm, const std::vector<ProductVertex>& points,
                                       std::optional<std::int64_t> samples, std::uint64_t seed) {
  return verify_metric_axioms(star_distance_table(sm, points), samples, seed);
}

Rational metric_local_density(const DistanceMatrix& d) {
  const int n = d.size();
  if (n == 0) throw InputError("local density of an empty point set");
  std::int64_t best_num = 0, best_den = 1;
  std::vector<std::int64_t> row;
  for (int x = 0; x < n; ++x) {
    row.clear();
    for (int y = 0; y < n; ++y) {
      if (y != x && d(x, y).is_finite()) row.push_back(d(x, y).value());
    }
    std::sort(row.begin(), row.end());
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k + 1 < row.size() && row[k + 1] == row[k]) continue;
      const std::int64_t r = row[k];
      if (r <= 0) throw InputError("metric has a zero distance between distinct points");
      const std::int64_t num = static_cast<std::int64_t>(k) + 1;
      if (num * best_den > best_num * r) {
        best_num = num;
        best_den = r;
      }
    }
  }
  return Rational(best_num, best_den);
}

}  // namespace fanband
