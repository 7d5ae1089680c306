#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fanband/graph.hpp"
#include "fanband/pipeline.hpp"

namespace fanband {

// Two edges crossing at one point; ta and tb are positions in (0,1) along each
// edge measured from its lower-id endpoint.
struct Crossing {
  Edge a;
  Edge b;
  double ta = 0.5;
  double tb = 0.5;
};

struct DrawnGraph {
  Graph g;
  std::vector<Crossing> crossings;
};

// G' with a degree-4 dummy vertex n + c for crossing c.
struct Planarization {
  Graph graph;
  int original_n = 0;
  std::vector<std::array<int, 4>> dummy_ends;   // endpoints of the two crossing edges
  std::vector<std::vector<int>> edge_path;      // per edge of g (sorted order): its path in G'
  int max_crossings_per_edge = 0;

  bool is_dummy(int v) const { return v >= original_n; }
};

// Throws InputError on crossings of edges that share an endpoint, repeated
// crossing pairs, two crossings at one point of an edge, positions outside
// (0,1), or an edge with more than k crossings.
Planarization planarize(const DrawnGraph& dg, int k);

// Largest edge count accepted for a k-planar graph on n vertices.
double kplanar_edge_limit(int n, int k);

struct CrossingReduction {
  std::vector<int> X;                 // sorted ids of G
  Ordering ordering;                  // of G - X
  std::int64_t bandwidth = 0;
  std::vector<int> X_prime;           // sorted ids of G'
  std::int64_t planar_bandwidth = 0;  // of the G' - X' ordering
  int max_path_length = 0;
  std::string gate;                   // non-empty when X = V(G) was returned outright
  bool certified = true;
  Planarization planarization;
};

CrossingReduction kplanar_reduce(const DrawnGraph& dg, int k, const PipelineConfig& cfg);

// planarizing: ids of G' whose removal leaves a planar graph; required when genus > 0.
CrossingReduction gk_reduce(const DrawnGraph& dg, int genus, int k, const std::optional<std::vector<int>>& planarizing,
                            const PipelineConfig& cfg);

}  // namespace fanband
