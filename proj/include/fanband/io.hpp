#pragma once

#include <istream>
#include <string>
#include <vector>

#include "fanband/embedding.hpp"
#include "fanband/graph.hpp"
#include "fanband/pipeline.hpp"
#include "fanband/reductions.hpp"
#include "fanband/sparsifier.hpp"
#include "fanband/tree_decomposition.hpp"

namespace fanband {

// Line-oriented reader that skips blank lines and '#' comments and reports
// errors as "<source>:<line>: <message>".
class LineReader {
 public:
  LineReader(std::istream& in, std::string source);

  // Tokens of the next non-blank line; false at end of input.
  bool next(std::vector<std::string>& tokens);
  // Like next, but a missing line is an error naming `what`.
  std::vector<std::string> expect(const std::string& what);
  // Pushes the last line back so that the following next() returns it again.
  void unread();
  int line() const { return line_; }
  [[noreturn]] void fail(const std::string& message) const;

  long long integer(const std::string& token, const std::string& what) const;
  double real(const std::string& token, const std::string& what) const;

 private:
  std::istream& in_;
  std::string source_;
  int line_ = 0;
  bool pushed_ = false;
  std::vector<std::string> last_;
};

Graph read_graph(LineReader& r);
std::string write_graph(const Graph& g);

TreeDecomposition read_decomposition(LineReader& r);
std::string write_decomposition(const TreeDecomposition& td);

ProductInput read_product(LineReader& r);
std::string write_product(const ProductInput& in);

// Graph followed by a crossing count and lines "u1 v1 u2 v2 t1 t2".
DrawnGraph read_drawing(LineReader& r);
std::string write_drawing(const DrawnGraph& dg);

// A count followed by that many ids, on any number of lines.
std::vector<int> read_id_list(LineReader& r);
std::string write_id_list(const std::vector<int>& ids);

std::string write_sparsifier(const StructuredSparsifier& sp);
StructuredSparsifier read_sparsifier(LineReader& r);

std::string write_embedding(const Embedding& emb);

std::string write_certificate(const FanCertificate& cert);
FanCertificate read_certificate(LineReader& r);

Graph parse_graph(const std::string& text, const std::string& source = "<text>");
FanCertificate parse_certificate(const std::string& text, const std::string& source = "<text>");

std::string read_file(const std::string& path);
// Writes to a temporary sibling and renames it over path.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace fanband
