#include "fanband/oracles.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

#include "fanband/errors.hpp"

namespace fanband {

namespace {

constexpr int kMaxBandwidthVertices = 12;
constexpr int kMaxDensityPoints = 5000;

struct Placer {
  const Graph& g;
  int n;
  std::int64_t b;
  std::vector<int> pos;

  // Every unplaced neighbour of a placed vertex w must land at or before pos(w) + b.
  bool deadlines_ok(int next) const {
    std::vector<std::int64_t> deadline(n, n - 1);
    for (int w = 0; w < n; ++w) {
      if (pos[w] < 0) continue;
      for (int u : g.neighbors(w)) {
        if (pos[u] < 0) deadline[u] = std::min<std::int64_t>(deadline[u], pos[w] + b);
      }
    }
    std::vector<int> count(n, 0);
    for (int u = 0; u < n; ++u) {
      if (pos[u] >= 0) continue;
      if (deadline[u] < next) return false;
      ++count[deadline[u]];
    }
    int due = 0;
    for (int t = next; t < n; ++t) {
      due += count[t];
      if (due > t - next + 1) return false;
    }
    return true;
  }

  bool place(int next) {
    if (next == n) return true;
    for (int v = 0; v < n; ++v) {
      if (pos[v] >= 0) continue;
      bool fits = true;
      for (int w : g.neighbors(v)) {
        if (pos[w] >= 0 && next - pos[w] > b) {
          fits = false;
          break;
        }
      }
      if (!fits) continue;
      pos[v] = next;
      if (deadlines_ok(next + 1) && place(next + 1)) return true;
      pos[v] = -1;
    }
    return false;
  }
};

Rational density_from_rows(int n, auto&& row_distances) {
  std::int64_t best_num = 0, best_den = 1;
  std::vector<std::int64_t> hist;
  for (int x = 0; x < n; ++x) {
    hist.assign(n + 1, 0);
    std::int64_t far = 0;
    row_distances(x, [&](std::int64_t d) {
      if (d >= static_cast<std::int64_t>(hist.size())) hist.resize(d + 1, 0);
      ++hist[d];
      far = std::max(far, d);
    });
    std::int64_t inside = 0;
    for (std::int64_t r = 1; r <= far; ++r) {
      inside += hist[r];
      if (hist[r] == 0) continue;
      if (inside * best_den > best_num * r) {
        best_num = inside;
        best_den = r;
      }
    }
  }
  return Rational(best_num, best_den);
}

template <class G>
Rational graph_density(const G& g, const std::vector<int>& vertices) {
  const int n = static_cast<int>(vertices.size());
  if (n == 0) throw InputError("local density of an empty graph");
  if (n > kMaxDensityPoints) throw InputError("exhaustive local density is limited to 5000 vertices");
  return density_from_rows(n, [&](int x, auto&& emit) {
    for (const Distance d : bfs_distances(g, vertices[x])) {
      if (d.is_finite() && d.value() > 0) emit(d.value());
    }
  });
}

}  // namespace

std::int64_t exact_bandwidth(const Graph& g) {
  const int n = g.vertex_count();
  if (n > kMaxBandwidthVertices) throw InputError("exact bandwidth is limited to 12 vertices");
  if (g.edge_count() == 0) return 0;
  int max_degree = 0;
  for (int v = 0; v < n; ++v) max_degree = std::max(max_degree, g.degree(v));
  for (std::int64_t b = (max_degree + 1) / 2; b < n; ++b) {
    Placer p{g, n, b, std::vector<int>(n, -1)};
    if (p.place(0)) return b;
  }
  return n - 1;
}

Rational exhaustive_local_density(const Graph& g) {
  std::vector<int> all(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) all[v] = v;
  return graph_density(g, all);
}

Rational exhaustive_local_density(const GraphView& g) { return graph_density(g, g.vertices()); }

Rational exhaustive_local_density(const DistanceMatrix& d) {
  const int n = d.size();
  if (n == 0) throw InputError("local density of an empty point set");
  if (n > kMaxDensityPoints) throw InputError("exhaustive local density is limited to 5000 points");
  return density_from_rows(n, [&](int x, auto&& emit) {
    for (int y = 0; y < n; ++y) {
      if (y != x && d(x, y).is_finite()) emit(d(x, y).value());
    }
  });
}

std::string OracleReport::line() const {
  std::ostringstream os;
  os << instance << ": oracle=" << oracle_value << " tested=" << tested_value << " verdict=" << (verdict ? "ok" : "FAIL")
     << " seconds=" << seconds;
  return os.str();
}

}  // namespace fanband
