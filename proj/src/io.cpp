#include "fanband/io.hpp"

#include <cerrno>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "fanband/errors.hpp"

namespace fanband {

namespace {

std::string real_text(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void expect_count(const LineReader& r, const std::vector<std::string>& t, std::size_t count, const std::string& what) {
  if (t.size() != count) {
    r.fail("expected " + std::to_string(count) + " fields for " + what + ", got " + std::to_string(t.size()));
  }
}

int vertex_id(const LineReader& r, const std::string& token, int n, const std::string& what) {
  const long long v = r.integer(token, what);
  if (v < 0 || v >= n) r.fail(what + " " + token + " is outside 0.." + std::to_string(n - 1));
  return static_cast<int>(v);
}

// Edge lines "u v" with u < v, no repeats.
std::vector<Edge> read_edges(LineReader& r, int n, long long m) {
  std::vector<Edge> edges;
  std::set<Edge> seen;
  for (long long e = 0; e < m; ++e) {
    const auto t = r.expect("edge " + std::to_string(e));
    expect_count(r, t, 2, "an edge");
    const int u = vertex_id(r, t[0], n, "vertex");
    const int v = vertex_id(r, t[1], n, "vertex");
    if (u >= v) r.fail("edge " + t[0] + " " + t[1] + " must be written with u < v");
    if (!seen.insert({u, v}).second) r.fail("duplicate edge " + t[0] + " " + t[1]);
    edges.push_back({u, v});
  }
  return edges;
}

std::vector<int> read_counted(LineReader& r, long long count, int n, const std::string& what) {
  std::vector<int> out;
  std::vector<std::string> t;
  while (static_cast<long long>(out.size()) < count) {
    t = r.expect(what);
    for (const auto& s : t) {
      if (static_cast<long long>(out.size()) == count) r.fail("too many entries in " + what);
      out.push_back(vertex_id(r, s, n, what + " entry"));
    }
  }
  return out;
}

void append_list(std::ostringstream& os, const std::vector<int>& ids) {
  for (std::size_t i = 0; i < ids.size(); ++i) os << (i ? " " : "") << ids[i];
  if (!ids.empty()) os << '\n';
}

bool is_section(const std::vector<std::string>& t) { return !t.empty() && !t[0].empty() && t[0][0] == '['; }

}  // namespace

LineReader::LineReader(std::istream& in, std::string source) : in_(in), source_(std::move(source)) {}

bool LineReader::next(std::vector<std::string>& tokens) {
  if (pushed_) {
    pushed_ = false;
    tokens = last_;
    return true;
  }
  std::string text;
  while (std::getline(in_, text)) {
    ++line_;
    const auto hash = text.find('#');
    if (hash != std::string::npos) text.erase(hash);
    std::istringstream ls(text);
    tokens.clear();
    for (std::string tok; ls >> tok;) tokens.push_back(tok);
    if (!tokens.empty()) {
      last_ = tokens;
      return true;
    }
  }
  return false;
}

std::vector<std::string> LineReader::expect(const std::string& what) {
  std::vector<std::string> t;
  if (!next(t)) fail("unexpected end of input, expected " + what);
  return t;
}

void LineReader::unread() { pushed_ = true; }

void LineReader::fail(const std::string& message) const {
  throw InputError(source_ + ":" + std::to_string(line_) + ": " + message);
}

long long LineReader::integer(const std::string& token, const std::string& what) const {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(token, &used);
  } catch (const std::exception&) {
    fail("expected an integer for " + what + ", got '" + token + "'");
  }
  if (used != token.size()) fail("expected an integer for " + what + ", got '" + token + "'");
  return v;
}

double LineReader::real(const std::string& token, const std::string& what) const {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(token, &used);
  } catch (const std::exception&) {
    fail("expected a number for " + what + ", got '" + token + "'");
  }
  if (used != token.size()) fail("expected a number for " + what + ", got '" + token + "'");
  return v;
}

Graph read_graph(LineReader& r) {
  const auto head = r.expect("graph header 'n m'");
  expect_count(r, head, 2, "the graph header");
  const long long n = r.integer(head[0], "n");
  const long long m = r.integer(head[1], "m");
  if (n < 0 || n > 100'000'000) r.fail("vertex count out of range");
  if (m < 0 || m > n * (n - 1) / 2) r.fail("edge count " + head[1] + " is impossible for " + head[0] + " vertices");
  const auto edges = read_edges(r, static_cast<int>(n), m);
  return Graph(static_cast<int>(n), edges);
}

std::string write_graph(const Graph& g) {
  std::ostringstream os;
  os << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const auto& [u, v] : g.edges()) os << u << ' ' << v << '\n';
  return os.str();
}

TreeDecomposition read_decomposition(LineReader& r) {
  TreeDecomposition td;
  const auto head = r.expect("bag count");
  expect_count(r, head, 1, "the bag count");
  const long long k = r.integer(head[0], "bag count");
  if (k < 1) r.fail("a decomposition needs at least one bag");
  for (long long x = 0; x < k; ++x) {
    const auto t = r.expect("bag " + std::to_string(x));
    const std::string want = std::to_string(x) + ":";
    if (t[0] != want) r.fail("expected bag line starting with '" + want + "'");
    std::vector<int> bag;
    for (std::size_t i = 1; i < t.size(); ++i) {
      const long long v = r.integer(t[i], "bag vertex");
      if (v < 0) r.fail("negative vertex in bag");
      bag.push_back(static_cast<int>(v));
    }
    std::sort(bag.begin(), bag.end());
    if (std::adjacent_find(bag.begin(), bag.end()) != bag.end()) r.fail("repeated vertex in bag");
    td.bags.push_back(std::move(bag));
  }
  std::vector<std::string> t;
  while (r.next(t)) {
    if (is_section(t)) {
      r.unread();
      break;
    }
    expect_count(r, t, 2, "a tree edge");
    const int x = vertex_id(r, t[0], static_cast<int>(k), "tree node");
    const int y = vertex_id(r, t[1], static_cast<int>(k), "tree node");
    td.tree_edges.push_back({x, y});
  }
  return td;
}

std::string write_decomposition(const TreeDecomposition& td) {
  std::ostringstream os;
  os << td.node_count() << '\n';
  for (int x = 0; x < td.node_count(); ++x) {
    os << x << ':';
    for (int v : td.bags[x]) os << ' ' << v;
    os << '\n';
  }
  for (const auto& [x, y] : td.tree_edges) os << x << ' ' << y << '\n';
  return os.str();
}

ProductInput read_product(LineReader& r) {
  ProductInput in;
  bool have_h = false, have_p = false, have_g = false;
  std::vector<std::string> t;
  std::vector<Edge> g_edges;
  int gn = 0;
  while (r.next(t)) {
    if (t.size() != 1 || !is_section(t)) r.fail("expected a section header such as [H]");
    const std::string sec = t[0];
    if (sec == "[H]") {
      in.h = read_graph(r);
      have_h = true;
    } else if (sec == "[TD]") {
      in.td = read_decomposition(r);
    } else if (sec == "[P]") {
      const auto rows = r.expect("row count");
      expect_count(r, rows, 1, "the row count");
      const long long p = r.integer(rows[0], "row count");
      if (p < 1 || p > 100'000'000) r.fail("row count must be positive");
      in.rows = static_cast<int>(p);
      have_p = true;
    } else if (sec == "[G]") {
      if (!have_h || !have_p) r.fail("[G] must follow [H] and [P]");
      const auto head = r.expect("G vertex count");
      expect_count(r, head, 1, "the G vertex count");
      const long long n = r.integer(head[0], "G vertex count");
      if (n < 0 || n > 100'000'000) r.fail("G vertex count out of range");
      gn = static_cast<int>(n);
      in.place.assign(gn, {-1, -1});
      std::set<ProductVertex> used;
      for (int v = 0; v < gn; ++v) {
        const auto line = r.expect("placement of G vertex " + std::to_string(v));
        expect_count(r, line, 3, "a placement 'id h row'");
        const int id = vertex_id(r, line[0], gn, "G vertex");
        if (id != v) r.fail("placements must list G vertices in order; expected " + std::to_string(v));
        const int hv = vertex_id(r, line[1], in.h.vertex_count(), "H vertex");
        const long long row = r.integer(line[2], "row");
        if (row < 1 || row > in.rows) r.fail("row " + line[2] + " is outside 1.." + std::to_string(in.rows));
        in.place[v] = {hv, static_cast<int>(row)};
        if (!used.insert(in.place[v]).second) r.fail("two G vertices share product vertex (" + line[1] + "," + line[2] + ")");
      }
      const auto mline = r.expect("G edge count");
      expect_count(r, mline, 1, "the G edge count");
      const long long m = r.integer(mline[0], "G edge count");
      if (m < 0) r.fail("negative edge count");
      std::set<Edge> seen;
      for (long long e = 0; e < m; ++e) {
        const auto el = r.expect("G edge " + std::to_string(e));
        expect_count(r, el, 2, "an edge");
        const int u = vertex_id(r, el[0], gn, "G vertex");
        const int v = vertex_id(r, el[1], gn, "G vertex");
        if (u >= v) r.fail("edge " + el[0] + " " + el[1] + " must be written with u < v");
        if (!seen.insert({u, v}).second) r.fail("duplicate edge " + el[0] + " " + el[1]);
        const ProductVertex a = in.place[u], b = in.place[v];
        if (std::abs(a.row - b.row) > 1 || (a.h != b.h && !in.h.has_edge(a.h, b.h))) {
          r.fail("edge " + el[0] + " " + el[1] + " joins (" + std::to_string(a.h) + "," + std::to_string(a.row) +
                 ") and (" + std::to_string(b.h) + "," + std::to_string(b.row) + "), which are not adjacent in H x P");
        }
        g_edges.push_back({u, v});
      }
      have_g = true;
    } else {
      r.fail("unknown section " + sec);
    }
  }
  if (!have_h || !have_p || !have_g) r.fail("product document needs [H], [P] and [G] sections");
  in.g = Graph(gn, g_edges);
  validate_product_input(in);
  return in;
}

std::string write_product(const ProductInput& in) {
  std::ostringstream os;
  os << "[H]\n" << write_graph(in.h);
  if (in.td) os << "[TD]\n" << write_decomposition(*in.td);
  os << "[P]\n" << in.rows << '\n';
  os << "[G]\n" << in.g.vertex_count() << '\n';
  for (int v = 0; v < in.g.vertex_count(); ++v) os << v << ' ' << in.place[v].h << ' ' << in.place[v].row << '\n';
  const auto edges = in.g.edges();
  os << edges.size() << '\n';
  for (const auto& [u, v] : edges) os << u << ' ' << v << '\n';
  return os.str();
}

DrawnGraph read_drawing(LineReader& r) {
  DrawnGraph dg;
  dg.g = read_graph(r);
  const int n = dg.g.vertex_count();
  std::vector<std::string> t;
  if (!r.next(t)) return dg;
  expect_count(r, t, 1, "the crossing count");
  const long long c = r.integer(t[0], "crossing count");
  if (c < 0) r.fail("negative crossing count");
  for (long long i = 0; i < c; ++i) {
    const auto line = r.expect("crossing " + std::to_string(i));
    expect_count(r, line, 6, "a crossing 'u1 v1 u2 v2 t1 t2'");
    Crossing x;
    x.a = {vertex_id(r, line[0], n, "vertex"), vertex_id(r, line[1], n, "vertex")};
    x.b = {vertex_id(r, line[2], n, "vertex"), vertex_id(r, line[3], n, "vertex")};
    x.ta = r.real(line[4], "crossing position");
    x.tb = r.real(line[5], "crossing position");
    if (!dg.g.has_edge(x.a.first, x.a.second) || !dg.g.has_edge(x.b.first, x.b.second)) {
      r.fail("crossing names a pair that is not an edge of the graph");
    }
    dg.crossings.push_back(x);
  }
  return dg;
}

std::string write_drawing(const DrawnGraph& dg) {
  std::ostringstream os;
  os << write_graph(dg.g) << dg.crossings.size() << '\n';
  for (const auto& x : dg.crossings) {
    os << x.a.first << ' ' << x.a.second << ' ' << x.b.first << ' ' << x.b.second << ' ' << real_text(x.ta) << ' '
       << real_text(x.tb) << '\n';
  }
  return os.str();
}

std::vector<int> read_id_list(LineReader& r) {
  const auto head = r.expect("id count");
  const long long count = r.integer(head[0], "id count");
  if (count < 0) r.fail("negative id count");
  std::vector<int> out;
  for (std::size_t i = 1; i < head.size(); ++i) out.push_back(static_cast<int>(r.integer(head[i], "id")));
  std::vector<std::string> t;
  while (static_cast<long long>(out.size()) < count && r.next(t)) {
    for (const auto& s : t) out.push_back(static_cast<int>(r.integer(s, "id")));
  }
  if (static_cast<long long>(out.size()) != count) {
    r.fail("expected " + std::to_string(count) + " ids, found " + std::to_string(out.size()));
  }
  for (int v : out) {
    if (v < 0) r.fail("negative id in list");
  }
  return out;
}

std::string write_id_list(const std::vector<int>& ids) {
  std::ostringstream os;
  os << ids.size() << '\n';
  append_list(os, ids);
  return os.str();
}

std::string write_sparsifier(const StructuredSparsifier& sp) {
  std::ostringstream os;
  os << "sparsifier " << sp.g_vertex_count() << ' ' << sp.h_vertex_count() << ' ' << sp.D() << ' ' << sp.N() << ' '
     << sp.log_N() << '\n';
  for (int i = 0; i <= sp.log_N(); ++i) {
    for (int j = 0; j < sp.strip_count(i); ++j) {
      const ProductCell& c = sp.cell(i, j);
      os << i << ' ' << j << ' ' << c.weight << ' ' << c.c << " |";
      for (int y : c.Y) os << ' ' << y;
      os << '\n';
    }
  }
  return os.str();
}

StructuredSparsifier read_sparsifier(LineReader& r) {
  const auto head = r.expect("sparsifier header");
  expect_count(r, head, 6, "the sparsifier header");
  if (head[0] != "sparsifier") r.fail("expected 'sparsifier' header");
  const int n = static_cast<int>(r.integer(head[1], "n"));
  const int hn = static_cast<int>(r.integer(head[2], "H vertex count"));
  Rational D;
  try {
    D = Rational::parse(head[3]);
  } catch (const InputError& e) {
    r.fail(e.what());
  }
  const int N = static_cast<int>(r.integer(head[4], "N"));
  const int log_N = static_cast<int>(r.integer(head[5], "log N"));
  if (n < 0 || hn < 0 || log_N < 0 || log_N > 30 || N != (1 << log_N) || N < n) r.fail("inconsistent N and log N");
  std::vector<std::vector<ProductCell>> cells(log_N + 1);
  for (int i = 0; i <= log_N; ++i) {
    cells[i].resize(N >> i);
    for (int j = 0; j < (N >> i); ++j) {
      const auto t = r.expect("cell " + std::to_string(i) + " " + std::to_string(j));
      if (t.size() < 5 || t[4] != "|") r.fail("expected 'i j weight c |' cell line");
      if (r.integer(t[0], "i") != i || r.integer(t[1], "j") != j) {
        r.fail("expected cell " + std::to_string(i) + " " + std::to_string(j));
      }
      ProductCell& c = cells[i][j];
      c.weight = r.integer(t[2], "weight");
      c.c = r.integer(t[3], "c");
      for (std::size_t q = 5; q < t.size(); ++q) c.Y.push_back(vertex_id(r, t[q], hn, "H vertex"));
      std::sort(c.Y.begin(), c.Y.end());
    }
  }
  return StructuredSparsifier(n, hn, D, std::move(cells));
}

std::string write_embedding(const Embedding& emb) {
  std::ostringstream os;
  os << emb.raw.rows() << ' ' << emb.L() << ' ' << emb.k << ' ' << real_text(emb.a) << ' ' << emb.seed << '\n';
  for (Eigen::Index p = 0; p < emb.raw.rows(); ++p) {
    os << emb.ids[p];
    for (Eigen::Index c = 0; c < emb.raw.cols(); ++c) os << ' ' << real_text(emb.raw(p, c));
    os << '\n';
  }
  return os.str();
}

std::string write_certificate(const FanCertificate& cert) {
  std::ostringstream os;
  os << "fan-certificate\n";
  os << "n " << cert.n << '\n';
  os << "b " << cert.b << '\n';
  os << "path_len " << cert.path_len << '\n';
  os << "fan_size " << cert.fan_size << '\n';
  os << "measured_bandwidth " << cert.measured_bandwidth << '\n';
  for (const auto& [key, value] : cert.params) os << "param " << key << ' ' << value << '\n';
  os << "X " << cert.X.size() << '\n';
  append_list(os, cert.X);
  os << "ordering " << cert.ordering.size() << '\n';
  append_list(os, cert.ordering);
  os << "mapping " << cert.mapping.size() << '\n';
  for (std::size_t v = 0; v < cert.mapping.size(); ++v) {
    os << v << ' ' << cert.mapping[v].first << ' ' << cert.mapping[v].second << '\n';
  }
  return os.str();
}

FanCertificate read_certificate(LineReader& r) {
  FanCertificate cert;
  auto t = r.expect("certificate header");
  if (t.size() != 1 || t[0] != "fan-certificate") r.fail("expected 'fan-certificate' header");
  auto field = [&](const std::string& name) {
    const auto line = r.expect(name);
    if (line.size() != 2 || line[0] != name) r.fail("expected '" + name + " <value>'");
    return r.integer(line[1], name);
  };
  cert.n = static_cast<int>(field("n"));
  if (cert.n < 0) r.fail("negative n");
  cert.b = static_cast<int>(field("b"));
  cert.path_len = static_cast<int>(field("path_len"));
  cert.fan_size = static_cast<int>(field("fan_size"));
  cert.measured_bandwidth = field("measured_bandwidth");
  t = r.expect("X");
  while (t[0] == "param") {
    if (t.size() != 3) r.fail("expected 'param <key> <value>'");
    if (!cert.params.emplace(t[1], t[2]).second) r.fail("repeated param " + t[1]);
    t = r.expect("X");
  }
  if (t.size() != 2 || t[0] != "X") r.fail("expected 'X <count>'");
  const long long xs = r.integer(t[1], "X size");
  if (xs < 0 || xs > cert.n) r.fail("X size out of range");
  cert.X = read_counted(r, xs, cert.n, "X");
  t = r.expect("ordering");
  if (t.size() != 2 || t[0] != "ordering") r.fail("expected 'ordering <count>'");
  const long long os = r.integer(t[1], "ordering size");
  if (os < 0 || os > cert.n) r.fail("ordering size out of range");
  cert.ordering = read_counted(r, os, cert.n, "ordering");
  t = r.expect("mapping");
  if (t.size() != 2 || t[0] != "mapping") r.fail("expected 'mapping <count>'");
  const long long ms = r.integer(t[1], "mapping size");
  if (ms != cert.n) r.fail("mapping must list all " + std::to_string(cert.n) + " vertices");
  cert.mapping.resize(ms);
  for (long long v = 0; v < ms; ++v) {
    const auto line = r.expect("mapping entry " + std::to_string(v));
    expect_count(r, line, 3, "a mapping entry 'vertex node slot'");
    if (r.integer(line[0], "vertex") != v) r.fail("mapping entries must be in vertex order; expected " + std::to_string(v));
    cert.mapping[v] = {static_cast<int>(r.integer(line[1], "node")), static_cast<int>(r.integer(line[2], "slot"))};
  }
  if (r.next(t)) r.fail("trailing content after the mapping");
  return cert;
}

Graph parse_graph(const std::string& text, const std::string& source) {
  std::istringstream in(text);
  LineReader r(in, source);
  Graph g = read_graph(r);
  std::vector<std::string> t;
  if (r.next(t)) r.fail("trailing content after the edge list");
  return g;
}

FanCertificate parse_certificate(const std::string& text, const std::string& source) {
  std::istringstream in(text);
  LineReader r(in, source);
  return read_certificate(r);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + tmp);
    out << content;
    out.flush();
    if (!out) throw InputError("failed writing " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw InputError("cannot rename " + tmp + " to " + path + ": " + ec.message());
}

}  // namespace fanband
