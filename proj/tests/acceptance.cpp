// Acceptance run: one PASS/FAIL line per criterion, plus the bandwidth trend CSV.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "fanband/embedding.hpp"
#include "fanband/errors.hpp"
#include "fanband/oracles.hpp"
#include "fanband/pipeline.hpp"
#include "fanband/reductions.hpp"
#include "fanband/star_metric.hpp"
#include "fanband/volumes.hpp"
#include "test_support.hpp"

using namespace fanband;
using namespace fanband::testing;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Accumulates failures; keeps the first failure message and a summary.
struct Tally {
  bool pass = true;
  std::string first_failure;
  std::ostringstream summary;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) first_failure = what;
    pass = pass && ok;
  }
  Outcome done() const {
    Outcome o;
    o.pass = pass;
    o.detail = summary.str();
    if (!pass) o.detail += (o.detail.empty() ? "" : "; ") + std::string("first failure: ") + first_failure;
    return o;
  }
};

std::string fmt(double x, int prec = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", prec, x);
  return buf;
}

struct ProductCase {
  std::string name;
  ProductInput in;
  int D = 2;
};

// The G vertices off X together with the completed H and d*.
struct Prepared {
  Graph hc;
  TreeDecomposition td;
  std::optional<StarMetric> sm;
  std::vector<int> ids;
  std::vector<ProductVertex> points;
};

Prepared prepare(const ProductInput& in, int D) {
  Prepared p;
  p.td = minfill_decomposition(in.h);
  p.hc = ttree_complete(in.h, p.td);
  p.sm.emplace(p.hc, product_sparsify(p.hc, p.td, in.place, Rational(D)));
  for (int v = 0; v < in.g.vertex_count(); ++v) {
    if (!p.sm->sparsifier().in_X(in.place[v])) {
      p.ids.push_back(v);
      p.points.push_back(in.place[v]);
    }
  }
  return p;
}

std::vector<ProductCase> metric_cases() {
  std::vector<ProductCase> cases{{"grid8 D=8", grid_in_product(8, 8), 8}, {"grid16 D=24", grid_in_product(16, 16), 24}};
  std::mt19937_64 rng(3);
  for (int t = 0; t < 3; ++t) {
    cases.push_back({"tree-product" + std::to_string(t), random_tree_product(20 + 5 * t, 20, 0.6, 0.6, rng), 8 + 2 * t});
  }
  return cases;
}

// ---------------------------------------------------------------------------

Outcome sparsifier_density() {
  Tally t;
  double worst = 0;
  int runs = 0, nonempty = 0;
  std::ostringstream survivors;
  for (int side : {16, 32}) {
    const int n = side * side;
    const int base = static_cast<int>(Rational(side, floor_log2(n)).ceil());
    const Graph g = grid_graph(side, side);
    const ProductInput in = grid_in_product(side, side);
    for (int mult : {1, 2, 4}) {
      const Rational D(base * mult);
      const std::string tag = "n=" + std::to_string(n) + " D=" + D.to_string();

      auto t0 = Clock::now();
      BakerConfig bc;
      bc.D = D;
      bc.layering = bfs_layering(g, 0);
      const BakerResult baker = baker_sparsify(g, bc);
      const GraphView rest_b(g, baker.X);
      const Rational ld_b = rest_b.vertex_count() > 0 ? exhaustive_local_density(rest_b) : Rational(0);
      const double sb = seconds_since(t0);
      if (rest_b.vertex_count() > 0) ++nonempty;
      survivors << " planar " << tag << ':' << rest_b.vertex_count();
      t.require(ld_b <= D, "planar " + tag + " ld " + ld_b.to_string());
      t.require(sb < 60, "planar " + tag + " took " + fmt(sb) + " s");
      worst = std::max(worst, sb);
      ++runs;

      if (D >= Rational(2)) {
        t0 = Clock::now();
        const TreeDecomposition td = minfill_decomposition(in.h);
        const StructuredSparsifier sp = product_sparsify(ttree_complete(in.h, td), td, in.place, D);
        std::vector<int> X;
        for (int v = 0; v < n; ++v) {
          if (sp.in_X(in.place[v])) X.push_back(v);
        }
        const GraphView rest_p(in.g, X);
        const Rational ld_p = rest_p.vertex_count() > 0 ? exhaustive_local_density(rest_p) : Rational(0);
        const double sp_s = seconds_since(t0);
        if (rest_p.vertex_count() > 0) ++nonempty;
        survivors << " product " << tag << ':' << rest_p.vertex_count();
        t.require(ld_p <= D, "product " + tag + " ld " + ld_p.to_string());
        t.require(sp_s < 60, "product " + tag + " took " + fmt(sp_s) + " s");
        worst = std::max(worst, sp_s);
        ++runs;
      }
    }
  }
  t.summary << runs << " sparsifier runs, " << nonempty << " with G-X nonempty, slowest " << fmt(worst, 3)
            << " s; survivors" << survivors.str();
  return t.done();
}

Outcome sparsifier_size() {
  Tally t;
  int checked = 0;
  for (int side : {8, 16, 32}) {
    const ProductInput in = grid_in_product(side, side);
    for (int D : {2, 4, 8, 16}) {
      const TreeDecomposition td = minfill_decomposition(in.h);
      const auto sp = product_sparsify(ttree_complete(in.h, td), td, in.place, Rational(D));
      t.require(product_size_bound_holds(sp, td.width()), "product grid" + std::to_string(side) + " D=" + std::to_string(D));
      ++checked;
    }
  }
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 6; ++trial) {
    const ProductInput in = random_tree_product(10 + 4 * trial, 16 + 4 * trial, 0.7, 0.7, rng);
    const TreeDecomposition td = minfill_decomposition(in.h);
    const auto sp = product_sparsify(ttree_complete(in.h, td), td, in.place, Rational(2 + trial));
    t.require(product_size_bound_holds(sp, td.width()), "product tree instance " + std::to_string(trial));
    ++checked;
  }

  double tightest = 0;
  std::vector<Graph> planar;
  for (int side : {16, 32}) planar.push_back(grid_graph(side, side));
  for (int trial = 0; trial < 4; ++trial) planar.push_back(stacked_triangulation(100 + 100 * trial, rng));
  for (int trial = 0; trial < 2; ++trial) planar.push_back(random_tree(300, rng));
  for (const Graph& g : planar) {
    const int n = g.vertex_count();
    for (int D : {2, 4, 8}) {
      BakerConfig bc;
      bc.D = Rational(D);
      bc.layering = bfs_layering(g, 0);
      const BakerResult r = baker_sparsify(g, bc);
      const double bound = r.size_bound(n, bc.D);
      const double size = static_cast<double>(r.X.size());
      t.require(size <= bound, "planar n=" + std::to_string(n) + " D=" + std::to_string(D) + " |X|=" +
                                   std::to_string(r.X.size()) + " bound " + fmt(bound));
      if (bound > 0) tightest = std::max(tightest, size / bound);
      ++checked;
    }
  }
  t.summary << checked << " instances, largest planar |X|/bound " << fmt(tightest, 3);
  return t.done();
}

Outcome metric_axioms() {
  Tally t;
  int instances = 0;
  double worst = 0;
  for (const auto& c : metric_cases()) {
    const Prepared p = prepare(c.in, c.D);
    if (p.points.size() < 3 || p.points.size() > 150) continue;
    const auto t0 = Clock::now();
    const MetricAxiomReport r = verify_metric_axioms(*p.sm, p.points);
    const double s = seconds_since(t0);
    t.require(r.ok(), c.name + ": " + r.first_violation);
    t.require(s < 30, c.name + " took " + fmt(s) + " s");
    worst = std::max(worst, s);
    ++instances;
  }
  t.require(instances >= 3, "fewer than three instances with 3..150 surviving vertices");
  t.summary << instances << " instances exhaustive, slowest " << fmt(worst, 3) << " s";
  return t.done();
}

Outcome metric_sandwich() {
  Tally t;
  int instances = 0;
  std::int64_t pairs = 0;
  for (const auto& c : metric_cases()) {
    const Prepared p = prepare(c.in, c.D);
    if (p.points.size() < 2 || p.points.size() > 150) continue;
    const auto& sp = p.sm->sparsifier();
    const auto full = materialize(p.hc, sp.first_row(), sp.last_row());
    const auto cut = materialize(p.hc, sp.first_row(), sp.last_row(), sp.X());
    for (std::size_t a = 0; a < p.points.size(); ++a) {
      const auto df = plain_bfs(full.adj, full.index(p.points[a]));
      const auto dc = plain_bfs(cut.adj, cut.index(p.points[a]));
      for (std::size_t b = 0; b < p.points.size(); ++b) {
        const Distance ds = (*p.sm)(p.points[a], p.points[b]);
        const std::int64_t lo = df[full.index(p.points[b])];
        const std::int64_t hi = dc[cut.index(p.points[b])];
        const std::int64_t mid = ds.is_infinite() ? kUnreachable : ds.value();
        t.require(lo <= mid && mid <= hi, c.name + " pair " + std::to_string(a) + "," + std::to_string(b));
        ++pairs;
      }
    }
    ++instances;
  }
  t.require(instances >= 3, "fewer than three instances with 2..150 surviving vertices");
  t.summary << instances << " instances, " << pairs << " ordered pairs";
  return t.done();
}

// Embeddings with the full dimension used by criteria 5, 6 and 8.
struct EmbeddedCase {
  std::string name;
  Prepared prep;
  Embedding emb;
  DistanceMatrix ds;
};

EmbeddedCase embed_case(const std::string& name, const ProductInput& in, int D, std::uint64_t seed) {
  EmbeddedCase e{name, prepare(in, D), {}, {}};
  EmbeddingParams params;
  params.k = std::max(2, ceil_log2(in.g.vertex_count()));
  params.a = 193;
  params.seed = seed;
  e.emb = build_embedding(e.prep.ids, e.prep.points, *e.prep.sm, params);
  e.ds = star_distance_table(*e.prep.sm, e.prep.points);
  return e;
}

std::vector<EmbeddedCase>& embedded_cases() {
  static std::vector<EmbeddedCase> cases = [] {
    std::vector<EmbeddedCase> out;
    out.push_back(embed_case("grid8 D=8", grid_in_product(8, 8), 8, 1));
    out.push_back(embed_case("grid16 D=24", grid_in_product(16, 16), 24, 1));
    std::mt19937_64 rng(3);
    out.push_back(embed_case("tree-product", random_tree_product(20, 20, 0.6, 0.6, rng), 8, 1));
    return out;
  }();
  return cases;
}

Outcome embedding_contraction() {
  Tally t;
  double worst = 0;
  std::int64_t pairs = 0;
  for (const auto& c : embedded_cases()) {
    const int np = static_cast<int>(c.prep.points.size());
    for (int u = 0; u < np; ++u) {
      for (int v = u + 1; v < np; ++v) {
        const double d = static_cast<double>(c.ds(u, v).value());
        const double e = (c.emb.raw.row(u) - c.emb.raw.row(v)).norm() * c.emb.scale();
        worst = std::max(worst, e / d);
        t.require(e <= d * (1 + 1e-9), c.name + " pair " + std::to_string(u) + "," + std::to_string(v));
        ++pairs;
      }
    }
  }
  t.summary << pairs << " pairs, max d2/d* " << fmt(worst, 6);
  return t.done();
}

Outcome embedding_lipschitz() {
  Tally t;
  double worst = 0;
  std::int64_t checks = 0;
  for (const auto& c : embedded_cases()) {
    const int np = static_cast<int>(c.prep.points.size());
    for (int u = 0; u < np; ++u) {
      for (int v = u + 1; v < np; ++v) {
        const double d = static_cast<double>(c.ds(u, v).value());
        const double gap = (c.emb.raw.row(u) - c.emb.raw.row(v)).cwiseAbs().maxCoeff();
        worst = std::max(worst, gap / d);
        t.require(gap <= 2 * d * (1 + 1e-9), c.name + " pair " + std::to_string(u) + "," + std::to_string(v));
        checks += c.emb.L();
      }
    }
  }
  t.summary << checks << " pair-coordinates, max |gap|/d* " << fmt(worst, 6) << " (limit 2)";
  return t.done();
}

Outcome component_diameters() {
  Tally t;
  std::mt19937_64 rng(7);
  std::vector<ProductCase> cases{{"grid8 D=4", grid_in_product(8, 8), 4}, {"grid8 D=8", grid_in_product(8, 8), 8}};
  cases.push_back({"tree-product D=6", random_tree_product(10, 12, 0.7, 0.7, rng), 6});
  cases.push_back({"tree-product D=4", random_tree_product(8, 16, 0.8, 0.8, rng), 4});
  std::int64_t decomps = 0;
  double ratio_i = 0, ratio_j = 0;
  for (const auto& c : cases) {
    const Prepared p = prepare(c.in, c.D);
    const auto& sp = p.sm->sparsifier();
    std::vector<ProductVertex> free;
    for (int x = 0; x < p.hc.vertex_count(); ++x) {
      for (int r = 1; r <= sp.N(); ++r) {
        if (!sp.in_X({x, r})) free.push_back({x, r});
      }
    }
    const Layering l = bfs_layering(p.hc, 0);
    const auto m = materialize(p.hc, sp.first_row(), sp.last_row());
    std::vector<std::vector<std::int64_t>> dp;
    for (const auto& a : free) {
      const auto d = plain_bfs(m.adj, m.index(a));
      std::vector<std::int64_t> row;
      for (const auto& b : free) row.push_back(d[m.index(b)]);
      dp.push_back(row);
    }
    const DistanceMatrix ds = star_distance_table(*p.sm, free);
    for (int i = 0; (1 << i) <= 2 * sp.N(); ++i) {
      const int delta = 1 << i;
      // Every offset pair for small delta, a sample otherwise.
      std::vector<std::pair<int, int>> offsets;
      if (delta <= 4) {
        for (int a = 0; a < delta; ++a) {
          for (int b = 0; b < delta; ++b) offsets.push_back({a, b});
        }
      } else {
        std::uniform_int_distribution<int> off(0, delta - 1);
        for (int s = 0; s < 8; ++s) offsets.push_back({off(rng), off(rng)});
      }
      for (const auto& [rH, rP] : offsets) {
        const auto inst = delta_decompose(p.hc, l, delta, rH, rP);
        const auto tr = trim_to_J(inst, p.hc, sp, free, rng());
        std::int64_t wi = 0, wj = 0;
        for (std::size_t a = 0; a < free.size(); ++a) {
          for (std::size_t b = a + 1; b < free.size(); ++b) {
            if (tr.i_label[a] == tr.i_label[b]) wi = std::max(wi, dp[a][b]);
            if (tr.j_label[a] == tr.j_label[b]) {
              wj = std::max(wj, ds(static_cast<int>(a), static_cast<int>(b)).value());
            }
          }
        }
        t.require(wi <= 2 * delta + 1, c.name + " delta " + std::to_string(delta) + " I-diameter " + std::to_string(wi));
        t.require(wj <= 5 * delta, c.name + " delta " + std::to_string(delta) + " J-diameter " + std::to_string(wj));
        ratio_i = std::max(ratio_i, static_cast<double>(wi) / (2 * delta + 1));
        ratio_j = std::max(ratio_j, static_cast<double>(wj) / (5 * delta));
        ++decomps;
      }
    }
  }
  t.summary << decomps << " decompositions, max I-diam/(2D+1) " << fmt(ratio_i, 3) << ", max J-diam/(5D) "
            << fmt(ratio_j, 3);
  return t.done();
}

Outcome distortion_and_volume() {
  // n = 256 through the 16 x 16 grid; a = 193 and k = ceil(log2 256) = 8.
  const ProductInput in = grid_in_product(16, 16);
  Outcome o;
  o.pass = false;
  std::ostringstream log;
  for (int attempt = 0; attempt < 3; ++attempt) {
    const std::uint64_t seed = 1 + attempt;
    std::optional<EmbeddedCase> fresh;
    if (attempt > 0) fresh.emplace(embed_case("grid16", in, 24, seed));
    const EmbeddedCase& c = fresh ? *fresh : embedded_cases()[1];
    const auto r = distortion_volume_report(c.emb, c.ds, 1000, seed);
    const bool ok = r.distortion <= r.distortion_bound && r.passing_fraction() >= 0.99;
    log << (attempt ? "; " : "") << "seed " << seed << ": points " << c.prep.points.size() << " L " << c.emb.L()
        << " distortion " << fmt(r.distortion) << " (bound " << fmt(r.distortion_bound) << "), triples "
        << r.triples_passing << "/" << r.triples << ", min volume ratio " << fmt(r.min_volume_ratio);
    if (ok) {
      o.pass = true;
      break;
    }
  }
  o.detail = log.str();
  return o;
}

Outcome reciprocal_sum() {
  Tally t;
  std::mt19937_64 rng(9);
  double min_rel = std::numeric_limits<double>::infinity();
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 5 + trial % 8;
    const int k = 2 + trial % 3;
    // Connected random graph metric: random tree plus random chords.
    std::vector<Edge> e = random_tree(n, rng).edges();
    for (const auto& extra : random_graph(n, 0.15 + 0.05 * (trial % 4), rng).edges()) e.push_back(extra);
    const Graph g = from_edges(n, e);
    const DistanceMatrix dm(g);
    const double D = exhaustive_local_density(dm).to_double();
    Eigen::MatrixXd d(n, n);
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) d(a, b) = static_cast<double>(dm(a, b).value());
    }
    const auto r = reciprocal_sum_check(d, D, k);
    t.require(r.ok, "metric " + std::to_string(trial) + " lhs " + fmt(r.lhs, 10) + " rhs " + fmt(r.rhs, 10));
    min_rel = std::min(min_rel, r.margin() / r.rhs);
  }
  t.summary << "100 metrics, smallest relative margin (rhs-lhs)/rhs " << fmt(min_rel, 4);
  return t.done();
}

Outcome volume_sandwich() {
  Tally t;
  std::mt19937_64 rng(10);
  std::normal_distribution<double> gauss;
  double worst = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const int k = 2 + trial % 3;
    const int dim = 1 + trial % 6;
    Eigen::MatrixXd pts(k, dim);
    for (int a = 0; a < k; ++a) {
      for (int b = 0; b < dim; ++b) pts(a, b) = gauss(rng);
    }
    const double evol = euclidean_volume(pts);
    const auto [lower, upper] = ivol_sandwich(pairwise_distances<double>(pts));
    t.require(evol <= upper * (1 + 1e-9), "point set " + std::to_string(trial));
    t.require(lower <= upper, "point set " + std::to_string(trial) + " has an inverted ivol interval");
    worst = std::max(worst, evol / upper);
  }
  t.summary << "500 point sets, max evol/(tvol/(k-1)!) " << fmt(worst, 6);
  return t.done();
}

// Certificate for a pipeline result with b = max(|X|, bw, 1), capped at n.
FanCertificate certify(const Graph& g, const PipelineResult& r) {
  const std::int64_t b = std::max<std::int64_t>({static_cast<std::int64_t>(r.X.size()), r.bandwidth, 1});
  return fan_certificate(g, r.X, r.ordering, static_cast<int>(std::min<std::int64_t>(b, g.vertex_count())));
}

struct CorpusRun {
  std::string name;
  Graph g;
  FanCertificate cert;
};

std::vector<CorpusRun>& corpus_runs() {
  static std::vector<CorpusRun> runs = [] {
    std::vector<CorpusRun> out;
    PipelineConfig cfg;
    cfg.seed = 5;
    for (int side : {8, 16}) {
      const Graph g = grid_graph(side, side);
      cfg.D = Rational(side / 4);
      out.push_back({"planar grid" + std::to_string(side), g, certify(g, planar_pipeline(g, cfg).result)});
      cfg.D = Rational(std::max(2, side / 2));
      const ProductInput in = grid_in_product(side, side);
      out.push_back({"product grid" + std::to_string(side), in.g, certify(in.g, product_pipeline(in, cfg).result)});
    }
    std::mt19937_64 rng(11);
    for (int t = 0; t < 3; ++t) {
      const Graph g = stacked_triangulation(60 + 30 * t, rng);
      cfg.D = Rational(3 + t);
      out.push_back({"triangulation" + std::to_string(t), g, certify(g, planar_pipeline(g, cfg).result)});
    }
    for (int t = 0; t < 2; ++t) {
      const Graph g = random_tree(80 + 40 * t, rng);
      cfg.D = Rational(2 + t);
      out.push_back({"tree" + std::to_string(t), g, certify(g, planar_pipeline(g, cfg).result)});
    }
    for (int t = 0; t < 3; ++t) {
      const ProductInput in = random_tree_product(10 + 4 * t, 12 + 4 * t, 0.7, 0.7, rng);
      cfg.D = Rational(4 + 2 * t);
      out.push_back({"tree-product" + std::to_string(t), in.g, certify(in.g, product_pipeline(in, cfg).result)});
    }
    return out;
  }();
  return runs;
}

Outcome certificate_soundness() {
  Tally t;
  std::int64_t tampers = 0;
  for (const auto& run : corpus_runs()) {
    const auto issues = verify_certificate(run.g, run.cert);
    t.require(issues.empty(), run.name + ": " + (issues.empty() ? "" : issues.front()));
    for (int v = 0; v < run.g.vertex_count(); ++v) {
      FanCertificate node = run.cert;
      node.mapping[v].first = (node.mapping[v].first + 1) % (node.path_len + 1);
      t.require(!verify_certificate(run.g, node).empty(), run.name + " node change of vertex " + std::to_string(v));
      ++tampers;
      if (run.cert.b > 1) {
        FanCertificate slot = run.cert;
        slot.mapping[v].second = (slot.mapping[v].second + 1) % slot.b;
        t.require(!verify_certificate(run.g, slot).empty(), run.name + " slot change of vertex " + std::to_string(v));
        ++tampers;
      }
    }
  }
  t.summary << corpus_runs().size() << " certificates verified, " << tampers << " single-entry tampers all rejected";
  return t.done();
}

Outcome round_trip() {
  Tally t;
  double worst = 0;
  for (const auto& run : corpus_runs()) {
    const BlowupOrdering back = blowup_to_bandwidth(run.g, run.cert.mapping, run.cert.b);
    const std::int64_t measured = bandwidth_of_ordering(GraphView(run.g, back.X), back.ordering);
    t.require(measured == back.bandwidth, run.name + " reported bandwidth differs from measured");
    t.require(back.bandwidth <= 2 * run.cert.b - 1, run.name + " bandwidth " + std::to_string(back.bandwidth) +
                                                        " with b " + std::to_string(run.cert.b));
    t.require(static_cast<int>(back.X.size()) <= run.cert.b, run.name + " |X| exceeds b");
    worst = std::max(worst, static_cast<double>(back.bandwidth) / (2 * run.cert.b - 1));
  }
  t.summary << corpus_runs().size() << " certificates, max bw/(2b-1) " << fmt(worst, 3);
  return t.done();
}

Outcome bandwidth_oracle() {
  Tally t;
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 7;
    const Graph g = random_graph(n, 0.2 + 0.1 * (trial % 6), rng);
    const std::int64_t exact = exact_bandwidth(g);
    const std::int64_t perm = permutation_bandwidth(g);
    t.require(exact == perm, "graph " + std::to_string(trial) + ": " + std::to_string(exact) + " vs " +
                                 std::to_string(perm));
  }
  t.require(bandwidth_of_ordering(path_graph(5), {0, 1, 2, 3, 4}) == 1, "P5 in path order");
  for (const Ordering& o : {Ordering{0, 1, 2}, Ordering{2, 0, 1}, Ordering{1, 2, 0}}) {
    t.require(bandwidth_of_ordering(complete_graph(3), o) == 2, "K3");
  }
  t.require(bandwidth_of_ordering(cycle_graph(4), {0, 1, 2, 3}) == 3, "C4 in cycle order");
  t.require(exact_bandwidth(cycle_graph(4)) == 2, "C4 optimum");
  t.require(exact_bandwidth(path_graph(5)) == 1 && exact_bandwidth(complete_graph(4)) == 3 &&
                exact_bandwidth(cycle_graph(5)) == 2,
            "exact bandwidth examples");
  t.summary << "200 random graphs with n <= 8 and the fixed examples";
  return t.done();
}

Outcome trend(const std::string& csv_path) {
  Tally t;
  std::ostringstream csv;
  csv << "sweep,n,side,D,X_size,survivors,bw_best,bw_median,D_log3n,ratio,certified,seconds\n";
  // The primary sweep uses D = sqrt(n)/log n; the second multiplies D by 8 so
  // that G - X is nonempty at desk scale. Only the primary sweep is judged.
  std::vector<double> ratios;
  std::vector<int> left;
  for (int mult : {1, 8}) {
    for (int side : {8, 16, 32, 64}) {
      const int n = side * side;
      const int lg = floor_log2(n);
      const Rational D(mult * side, lg);
      if (D > Rational(n)) continue;
      PipelineConfig cfg;
      cfg.D = D;
      cfg.seed = 1;
      cfg.dims_cap = 2048;
      const auto t0 = Clock::now();
      const PlanarRun run = planar_pipeline(grid_graph(side, side), cfg);
      const double s = seconds_since(t0);
      const double denom = D.to_double() * lg * lg * lg;
      const double ratio = static_cast<double>(run.result.median_bandwidth) / denom;
      const int survivors = n - static_cast<int>(run.result.X.size());
      if (mult == 1) {
        ratios.push_back(ratio);
        left.push_back(survivors);
      }
      csv << (mult == 1 ? "primary" : "supplementary") << ',' << n << ',' << side << ',' << D.to_string() << ','
          << run.result.X.size() << ',' << survivors << ',' << run.result.bandwidth << ','
          << run.result.median_bandwidth << ',' << fmt(denom, 8) << ',' << fmt(ratio, 8) << ','
          << (run.result.certified ? 1 : 0) << ',' << fmt(s, 4) << '\n';
    }
  }
  if (!csv_path.empty()) {
    std::ofstream f(csv_path);
    f << csv.str();
    t.require(static_cast<bool>(f), "cannot write " + csv_path);
  }
  const std::size_t m = ratios.size();
  const bool measurable = left[m - 3] > 0 && left[m - 2] > 0 && left[m - 1] > 0;
  t.require(measurable, "G - X is empty at one of the top three sizes, so the trend is not measurable");
  t.require(ratios[m - 2] <= ratios[m - 3] && ratios[m - 1] <= ratios[m - 2],
            "median bw/(D log^3 n) increases across the top three sizes");
  t.summary << "primary survivors";
  for (int v : left) t.summary << ' ' << v;
  t.summary << ", ratios";
  for (double r : ratios) t.summary << ' ' << fmt(r, 4);
  if (!csv_path.empty()) t.summary << ", CSV at " << csv_path;
  return t.done();
}

Outcome kplanar() {
  Tally t;
  std::vector<std::pair<std::string, DrawnGraph>> cases{{"K5", k5_one_crossing()}};
  std::mt19937_64 rng(14);
  for (int s = 0; s < 6; ++s) cases.push_back({"crossed grid" + std::to_string(s), crossed_grid(6 + s, 0.5, rng)});
  std::int64_t edges = 0;
  for (const auto& [name, dg] : cases) {
    PipelineConfig cfg;
    cfg.D = Rational(2 + static_cast<int>(edges % 3));
    cfg.a = 20;
    cfg.seed = 2;
    const CrossingReduction r = kplanar_reduce(dg, 1, cfg);
    const Planarization& pl = r.planarization;
    for (int d = pl.original_n; d < pl.graph.vertex_count(); ++d) {
      t.require(pl.graph.degree(d) == 4, name + " dummy " + std::to_string(d) + " has degree " +
                                             std::to_string(pl.graph.degree(d)));
    }
    const auto g_edges = dg.g.edges();
    for (std::size_t e = 0; e < g_edges.size(); ++e) {
      const auto& path = pl.edge_path[e];
      bool ok = path.front() == g_edges[e].first && path.back() == g_edges[e].second && path.size() <= 3;
      for (std::size_t q = 1; q < path.size(); ++q) ok = ok && pl.graph.has_edge(path[q - 1], path[q]);
      t.require(ok, name + " edge " + std::to_string(e) + " path");
      ++edges;
    }
    t.require(r.X.size() <= 4 * r.X_prime.size(), name + " |X| > 4|X'|");
  }
  t.summary << cases.size() << " drawings, " << edges << " edge paths";
  return t.done();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  std::string csv;
  app.add_option("--csv", csv, "where to write the bandwidth trend table");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"sparsifier density", sparsifier_density},
      {"sparsifier size", sparsifier_size},
      {"d* metric axioms", metric_axioms},
      {"metric sandwich", metric_sandwich},
      {"embedding contraction", embedding_contraction},
      {"per-coordinate Lipschitz", embedding_lipschitz},
      {"component diameters", component_diameters},
      {"distortion and volume", distortion_and_volume},
      {"reciprocal sum", reciprocal_sum},
      {"volume sandwich", volume_sandwich},
      {"certificate soundness", certificate_soundness},
      {"blowup round trip", round_trip},
      {"bandwidth oracle", bandwidth_oracle},
      {"bandwidth trend", [&] { return trend(csv); }},
      {"k-planar reduction", kplanar},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto t0 = Clock::now();
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS" : "FAIL") << ' ' << (i + 1) << ' ' << criteria[i].first << ": " << o.detail << " ["
              << fmt(seconds_since(t0), 3) << " s]" << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
