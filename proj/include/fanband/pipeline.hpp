#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fanband/embedding.hpp"
#include "fanband/graph.hpp"
#include "fanband/sparsifier.hpp"
#include "fanband/tree_decomposition.hpp"

namespace fanband {

// A graph G given together with an embedding into H x P.
struct ProductInput {
  Graph h;
  std::optional<TreeDecomposition> td;
  int rows = 0;                         // P has rows 1..rows
  std::vector<ProductVertex> place;     // position of each G vertex
  Graph g;
};

// Throws InputError naming the first G edge that is not an edge of H x P, or a
// placement outside H or the row range, or two G vertices on one product vertex.
void validate_product_input(const ProductInput& in);

// Drops empty rows and shifts so that the occupied rows become 1..r.
std::vector<ProductVertex> compress_rows(const std::vector<ProductVertex>& place);

struct PipelineConfig {
  Rational D{2};
  int k = 0;                 // 0 selects ceil(log2 n), at least 2
  double a = 193.0;
  std::uint64_t seed = 0;
  int restarts = 5;
  std::optional<int> dims_cap;
};

struct PipelineResult {
  std::vector<int> X;                      // sorted vertex ids of G
  Ordering ordering;                       // of G - X, best restart
  std::int64_t bandwidth = 0;              // of the returned ordering
  std::vector<std::int64_t> restart_bandwidths;
  std::int64_t median_bandwidth = 0;
  int width = -1;                          // width used in the size bound
  bool certified = true;
};

struct ProductRun {
  PipelineResult result;
  Graph h_completed;
  TreeDecomposition td;
  std::vector<ProductVertex> place;        // after row compression
  std::optional<StarMetric> metric;
  std::optional<Embedding> embedding;
  bool size_bound_ok = true;
};

// Completes H to a t-tree, builds the structured sparsifier, the d* metric and
// the embedding, and keeps the best of the projection orderings.
ProductRun product_pipeline(const ProductInput& in, const PipelineConfig& cfg);

struct PlanarRun {
  PipelineResult result;
  BakerResult baker;
};

// Baker sparsifier on a BFS layering, then the projection ordering of G - X
// embedded in (its min-fill completion) x (its BFS layers), with no further cuts.
PlanarRun planar_pipeline(const Graph& g, const PipelineConfig& cfg);

// Orders the vertices of graph g (all of them) through an embedding of g into
// (completion of g) x (BFS layers of g) with an empty sparsifier.
PipelineResult order_by_layered_embedding(const Graph& g, const PipelineConfig& cfg);

struct FanCertificate {
  int n = 0;
  int b = 1;
  int path_len = 1;
  int fan_size = 2;
  std::vector<int> X;                              // center preimage, in slot order
  Ordering ordering;                               // of G - X
  std::vector<std::pair<int, int>> mapping;        // vertex -> (fan node, slot); node 0 is the center
  std::int64_t measured_bandwidth = 0;
  std::map<std::string, std::string> params;       // seeds and parameter echo
};

// Pads X from the tail of ord up to b vertices and maps consecutive b-chunks of
// the remaining ordering to path nodes 1, 2, ...
// Throws ConstraintError if |X| > b or bw(g - X, ord) > b.
FanCertificate fan_certificate(const Graph& g, const std::vector<int>& X, const Ordering& ord, int b);

std::vector<std::string> verify_certificate(const Graph& g, const FanCertificate& cert);

struct BlowupOrdering {
  std::vector<int> X;
  Ordering ordering;
  std::int64_t bandwidth = 0;
};

// X = preimage of the center; G - X ordered block by block along the path.
BlowupOrdering blowup_to_bandwidth(const Graph& g, const std::vector<std::pair<int, int>>& mapping, int b);

}  // namespace fanband
