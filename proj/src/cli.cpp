#include "fanband/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fanband/errors.hpp"
#include "fanband/io.hpp"
#include "fanband/oracles.hpp"
#include "fanband/pipeline.hpp"
#include "fanband/reductions.hpp"
#include "fanband/star_metric.hpp"

namespace fanband {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerify = 1;
constexpr int kExitInput = 2;
constexpr int kDensityPointLimit = 2000;

struct Options {
  std::string graph;
  std::string product;
  std::string drawing;
  std::string cert;
  std::string planarizing;
  std::string cells;
  std::string out;
  std::string D;
  int k = 0;
  int crossings = 0;
  int genus = 0;
  double a = 193.0;
  std::uint64_t seed = 0;
  int restarts = 5;
  std::optional<int> dims_cap;
  std::optional<int> b;
  std::string mode = "certified";
};

struct Loaded {
  std::optional<Graph> graph;
  std::optional<ProductInput> product;

  const Graph& g() const { return graph ? *graph : product->g; }
};

template <class T, class F>
T parse_file(const std::string& path, F&& read) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  LineReader r(in, path);
  T value = read(r);
  std::vector<std::string> rest;
  if (r.next(rest)) r.fail("trailing content");
  return value;
}

Loaded load_input(const Options& o) {
  Loaded in;
  if (!o.graph.empty() == !o.product.empty()) throw InputError("give exactly one of --graph and --product");
  if (!o.graph.empty()) in.graph = parse_file<Graph>(o.graph, [](LineReader& r) { return read_graph(r); });
  if (!o.product.empty()) {
    in.product = parse_file<ProductInput>(o.product, [](LineReader& r) { return read_product(r); });
  }
  return in;
}

Rational parse_D(const Options& o, int n, bool product) {
  if (o.D.empty()) throw InputError("--D is required");
  const Rational D = Rational::parse(o.D);
  if (product && D < Rational(2)) throw InputError("--D must be at least 2 for product inputs; got " + o.D);
  if (D < Rational(1)) throw InputError("--D must be at least 1; got " + o.D);
  if (n >= 2 && D > Rational(n)) throw InputError("--D must not exceed n = " + std::to_string(n) + "; got " + o.D);
  return D;
}

PipelineConfig config_of(const Options& o, const Rational& D) {
  if (o.mode != "certified" && o.mode != "exploratory") throw InputError("--mode must be certified or exploratory");
  if (o.mode == "certified" && o.dims_cap) throw InputError("--dims-cap requires --mode exploratory");
  if (o.k != 0 && o.k < 2) throw InputError("--k must be at least 2");
  if (!(o.a > 0)) throw InputError("--a must be positive");
  if (o.restarts < 1) throw InputError("--restarts must be positive");
  PipelineConfig cfg;
  cfg.D = D;
  cfg.k = o.k;
  cfg.a = o.a;
  cfg.seed = o.seed;
  cfg.restarts = o.restarts;
  cfg.dims_cap = o.dims_cap;
  return cfg;
}

void emit(const Options& o, std::ostream& out, const std::string& content) {
  if (o.out.empty()) {
    out << content;
  } else {
    write_file_atomic(o.out, content);
  }
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

bool guarantees_hold(const Options& o, bool certified) { return certified && o.a >= 193.0; }

void restart_line(std::ostream& os, const PipelineResult& r) {
  os << "restart_bandwidths";
  for (auto b : r.restart_bandwidths) os << ' ' << b;
  os << '\n';
}

struct Ordered {
  PipelineResult result;
  std::string report;
};

Ordered run_pipeline(const Options& o, const Loaded& in) {
  const int n = in.g().vertex_count();
  const Rational D = parse_D(o, n, in.product.has_value());
  const PipelineConfig cfg = config_of(o, D);
  Ordered res;
  std::ostringstream os;
  if (in.product) {
    ProductRun run = product_pipeline(*in.product, cfg);
    res.result = std::move(run.result);
    os << "pipeline product\n";
    os << "width " << res.result.width << '\n';
    os << "size_bound_ok " << yes_no(run.size_bound_ok) << '\n';
  } else {
    PlanarRun run = planar_pipeline(*in.graph, cfg);
    res.result = std::move(run.result);
    os << "pipeline planar\n";
    os << "width " << res.result.width << '\n';
    os << "size_bound " << run.baker.size_bound(n, D) << '\n';
  }
  os << "n " << n << '\n';
  os << "D " << D << '\n';
  os << "X_size " << res.result.X.size() << '\n';
  os << "bandwidth " << res.result.bandwidth << '\n';
  os << "median_bandwidth " << res.result.median_bandwidth << '\n';
  restart_line(os, res.result);
  os << "certified " << yes_no(guarantees_hold(o, res.result.certified)) << '\n';
  res.report = os.str();
  return res;
}

int cmd_sparsify(const Options& o, std::ostream& out) {
  const Loaded in = load_input(o);
  const Graph& g = in.g();
  const int n = g.vertex_count();
  const Rational D = parse_D(o, n, in.product.has_value());
  std::vector<int> X;
  std::ostringstream rep;
  bool ok = true;
  std::optional<StarMetric> sm;
  std::vector<ProductVertex> place;
  if (in.product) {
    const TreeDecomposition td = in.product->td ? *in.product->td : minfill_decomposition(in.product->h);
    const Graph hc = ttree_complete(in.product->h, td);
    place = compress_rows(in.product->place);
    StructuredSparsifier sp = product_sparsify(hc, td, place, D);
    for (int v = 0; v < n; ++v) {
      if (sp.in_X(place[v])) X.push_back(v);
    }
    const bool size_ok = product_size_bound_holds(sp, td.width());
    ok = ok && size_ok;
    if (!o.cells.empty()) write_file_atomic(o.cells, write_sparsifier(sp));
    rep << "mode product\nwidth " << td.width() << "\nsize_bound_ok " << yes_no(size_ok) << '\n';
    sm.emplace(hc, std::move(sp));
  } else {
    BakerConfig bc;
    bc.D = D;
    bc.layering = bfs_layering(g, 0);
    const BakerResult br = baker_sparsify(g, bc);
    X = br.X;
    const bool size_ok = static_cast<double>(X.size()) <= br.size_bound(n, D) + 1e-9 || X.empty();
    ok = ok && size_ok;
    rep << "mode planar\nwidth " << br.max_width << "\nsize_bound " << br.size_bound(n, D) << "\nsize_bound_ok "
        << yes_no(size_ok) << '\n';
  }
  rep << "n " << n << "\nD " << D << "\nX_size " << X.size() << '\n';
  const GraphView rest(g, X);
  if (rest.vertex_count() == 0) {
    rep << "local_density 0\n";
  } else if (rest.vertex_count() <= 5000) {
    const Rational ld = exhaustive_local_density(rest);
    rep << "local_density " << ld << '\n';
    ok = ok && ld <= D;
  } else {
    rep << "local_density skipped\n";
  }
  if (sm && rest.vertex_count() > 0 && rest.vertex_count() <= kDensityPointLimit) {
    std::vector<ProductVertex> pts;
    for (int v : rest.vertices()) pts.push_back(place[v]);
    const Rational ld = metric_local_density(star_distance_table(*sm, pts));
    rep << "dstar_local_density " << ld << '\n';
    ok = ok && ld <= D;
  }
  rep << "verified " << yes_no(ok) << '\n';
  if (!o.out.empty()) write_file_atomic(o.out, write_id_list(X));
  out << rep.str();
  return ok ? kExitOk : kExitVerify;
}

int cmd_embed(const Options& o, std::ostream& out) {
  const Loaded in = load_input(o);
  if (!in.product) throw InputError("embed needs --product");
  const int n = in.g().vertex_count();
  const Rational D = parse_D(o, n, true);
  const PipelineConfig cfg = config_of(o, D);
  const ProductRun run = product_pipeline(*in.product, cfg);
  if (!run.embedding) throw InputError("nothing to embed: G - X is empty or has one vertex");
  emit(o, out, write_embedding(*run.embedding));
  return kExitOk;
}

std::string ordering_document(const PipelineResult& r) {
  std::ostringstream os;
  os << "X " << r.X.size() << '\n';
  for (std::size_t i = 0; i < r.X.size(); ++i) os << (i ? " " : "") << r.X[i];
  if (!r.X.empty()) os << '\n';
  os << "ordering " << r.ordering.size() << '\n';
  for (std::size_t i = 0; i < r.ordering.size(); ++i) os << (i ? " " : "") << r.ordering[i];
  if (!r.ordering.empty()) os << '\n';
  return os.str();
}

int cmd_order(const Options& o, std::ostream& out) {
  const Loaded in = load_input(o);
  const Ordered res = run_pipeline(o, in);
  emit(o, out, ordering_document(res.result) + res.report);
  if (!o.out.empty()) out << res.report;
  return kExitOk;
}

int cmd_certify(const Options& o, std::ostream& out) {
  const Loaded in = load_input(o);
  const Ordered res = run_pipeline(o, in);
  const int n = in.g().vertex_count();
  int b = std::max<std::int64_t>({static_cast<std::int64_t>(res.result.X.size()), res.result.bandwidth, 1});
  if (o.b) {
    if (*o.b < b) throw ConstraintError("--b " + std::to_string(*o.b) + " is below max(|X|, bandwidth) = " + std::to_string(b));
    b = *o.b;
  }
  b = std::min(b, n);
  FanCertificate cert = fan_certificate(in.g(), res.result.X, res.result.ordering, b);
  cert.params["input"] = in.product ? "product" : "graph";
  cert.params["D"] = o.D;
  cert.params["k"] = std::to_string(o.k);
  std::ostringstream a;
  a << o.a;
  cert.params["a"] = a.str();
  cert.params["seed"] = std::to_string(o.seed);
  cert.params["restarts"] = std::to_string(o.restarts);
  cert.params["mode"] = o.mode;
  if (o.dims_cap) cert.params["dims_cap"] = std::to_string(*o.dims_cap);
  cert.params["X_size"] = std::to_string(res.result.X.size());
  cert.params["pipeline_bandwidth"] = std::to_string(res.result.bandwidth);
  emit(o, out, write_certificate(cert));
  const auto problems = verify_certificate(in.g(), cert);
  if (!o.out.empty()) out << res.report << "b " << cert.b << "\nfan_size " << cert.fan_size << '\n';
  for (const auto& p : problems) out << "violation: " << p << '\n';
  return problems.empty() ? kExitOk : kExitVerify;
}

int cmd_verify(const Options& o, std::ostream& out) {
  if (o.cert.empty()) throw InputError("verify needs --cert");
  const Loaded in = load_input(o);
  const FanCertificate cert = parse_file<FanCertificate>(o.cert, [](LineReader& r) { return read_certificate(r); });
  const auto problems = verify_certificate(in.g(), cert);
  if (problems.empty()) {
    out << "ok\n";
    const BlowupOrdering back = blowup_to_bandwidth(in.g(), cert.mapping, cert.b);
    out << "blowup_bandwidth " << back.bandwidth << " <= " << 2 * cert.b - 1 << '\n';
    return kExitOk;
  }
  for (const auto& p : problems) out << "violation: " << p << '\n';
  return kExitVerify;
}

std::string reduction_report(const CrossingReduction& r, int k) {
  std::ostringstream os;
  os << "X " << r.X.size() << '\n';
  for (std::size_t i = 0; i < r.X.size(); ++i) os << (i ? " " : "") << r.X[i];
  if (!r.X.empty()) os << '\n';
  os << "ordering " << r.ordering.size() << '\n';
  for (std::size_t i = 0; i < r.ordering.size(); ++i) os << (i ? " " : "") << r.ordering[i];
  if (!r.ordering.empty()) os << '\n';
  if (!r.gate.empty()) {
    os << "gate " << r.gate << '\n';
    return os.str();
  }
  os << "dummies " << r.planarization.dummy_ends.size() << '\n';
  os << "X_prime_size " << r.X_prime.size() << '\n';
  os << "planar_bandwidth " << r.planar_bandwidth << '\n';
  os << "bandwidth " << r.bandwidth << '\n';
  os << "max_path_length " << r.max_path_length << " <= " << k + 1 << '\n';
  return os.str();
}

bool reduction_ok(const CrossingReduction& r, int k) {
  if (!r.gate.empty()) return true;
  return r.max_path_length <= k + 1 && r.X.size() <= 4 * r.X_prime.size() &&
         r.bandwidth <= static_cast<std::int64_t>(k + 1) * r.planar_bandwidth;
}

int cmd_reduce(const Options& o, std::ostream& out, bool gk) {
  if (o.drawing.empty()) throw InputError("--drawing is required");
  const DrawnGraph dg = parse_file<DrawnGraph>(o.drawing, [](LineReader& r) { return read_drawing(r); });
  const Planarization pl = planarize(dg, o.crossings);
  const Rational D = parse_D(o, pl.graph.vertex_count(), false);
  Options inner = o;
  inner.k = 0;
  const PipelineConfig cfg = config_of(inner, D);
  CrossingReduction r;
  if (gk) {
    std::optional<std::vector<int>> planarizing;
    if (!o.planarizing.empty()) {
      planarizing = parse_file<std::vector<int>>(o.planarizing, [](LineReader& lr) { return read_id_list(lr); });
    }
    r = gk_reduce(dg, o.genus, o.crossings, planarizing, cfg);
  } else {
    r = kplanar_reduce(dg, o.crossings, cfg);
  }
  const std::string doc = reduction_report(r, o.crossings);
  emit(o, out, doc);
  const bool ok = reduction_ok(r, o.crossings);
  if (!o.out.empty()) out << "verified " << yes_no(ok) << '\n';
  return ok ? kExitOk : kExitVerify;
}

int cmd_oracle(const Options& o, std::ostream& out) {
  const Loaded in = load_input(o);
  const Graph& g = in.g();
  out << "n " << g.vertex_count() << "\nm " << g.edge_count() << '\n';
  if (g.vertex_count() > 0) out << "local_density " << exhaustive_local_density(g) << '\n';
  if (g.vertex_count() <= 12) out << "bandwidth " << exact_bandwidth(g) << '\n';
  return kExitOk;
}

void add_input(CLI::App* c, Options& o) {
  c->add_option("--graph", o.graph, "graph file: 'n m' then edges 'u v'");
  c->add_option("--product", o.product, "product document with [H], [TD], [P], [G] sections");
}

void add_run(CLI::App* c, Options& o, bool volume_k = true) {
  c->add_option("--D", o.D, "local density target, e.g. 8 or 9/4");
  if (volume_k) c->add_option("--k", o.k, "volume order of the embedding (default ceil(log2 n))");
  c->add_option("--a", o.a, "repetition constant")->capture_default_str();
  c->add_option("--seed", o.seed, "master seed")->capture_default_str();
  c->add_option("--restarts", o.restarts, "projection restarts")->capture_default_str();
  c->add_option("--dims-cap", o.dims_cap, "cap on embedding dimensions (exploratory mode only)");
  c->add_option("--mode", o.mode, "certified or exploratory")->capture_default_str();
}

}  // namespace

int run_command(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"fan blowup certificates and low-bandwidth orderings"};
  app.require_subcommand(1);

  auto* sparsify = app.add_subcommand("sparsify", "compute a sparsifying set X and check the density of G - X");
  add_input(sparsify, o);
  sparsify->add_option("--D", o.D, "local density target")->required();
  sparsify->add_option("--seed", o.seed, "master seed");
  sparsify->add_option("--cells", o.cells, "write the per-strip cuts of the product sparsifier here");
  sparsify->add_option("--out", o.out, "write X here");

  auto* embed = app.add_subcommand("embed", "dump the embedding of G - X");
  add_input(embed, o);
  add_run(embed, o);
  embed->add_option("--out", o.out, "output path");

  auto* order = app.add_subcommand("order", "sparsify and order G - X");
  add_input(order, o);
  add_run(order, o);
  order->add_option("--out", o.out, "output path");

  auto* certify = app.add_subcommand("certify", "write a fan blowup certificate");
  add_input(certify, o);
  add_run(certify, o);
  certify->add_option("--b", o.b, "blowup factor (default max(|X|, bandwidth))");
  certify->add_option("--out", o.out, "output path");

  auto* verify = app.add_subcommand("verify", "check a certificate against its graph");
  add_input(verify, o);
  verify->add_option("--cert", o.cert, "certificate file")->required();

  auto* kplanar = app.add_subcommand("reduce-kplanar", "reduce a k-planar drawing to the planar pipeline");
  kplanar->add_option("--drawing", o.drawing, "drawing file")->required();
  kplanar->add_option("--k", o.crossings, "crossings allowed per edge")->required();
  add_run(kplanar, o, false);
  kplanar->add_option("--out", o.out, "output path");

  auto* gk = app.add_subcommand("reduce-gk", "reduce a (g,k)-planar drawing with a supplied planarizing set");
  gk->add_option("--drawing", o.drawing, "drawing file")->required();
  add_run(gk, o, false);
  gk->add_option("--k", o.crossings, "crossings allowed per edge")->required();
  gk->add_option("--genus", o.genus, "Euler genus of the drawing surface")->capture_default_str();
  gk->add_option("--planarizing", o.planarizing, "ids of the crossing-augmented graph whose removal leaves it planar");
  gk->add_option("--out", o.out, "output path");

  auto* oracle = app.add_subcommand("oracle", "exact local density and (n <= 12) exact bandwidth");
  add_input(oracle, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*sparsify) return cmd_sparsify(o, out);
    if (*embed) return cmd_embed(o, out);
    if (*order) return cmd_order(o, out);
    if (*certify) return cmd_certify(o, out);
    if (*verify) return cmd_verify(o, out);
    if (*kplanar) return cmd_reduce(o, out, false);
    if (*gk) return cmd_reduce(o, out, true);
    if (*oracle) return cmd_oracle(o, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const ConstraintError& e) {
    err << "constraint violated: " << e.what() << '\n';
    return kExitVerify;
  }
  return kExitInput;
}

}  // namespace fanband
