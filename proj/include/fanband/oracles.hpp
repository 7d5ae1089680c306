#pragma once

#include <cstdint>
#include <string>

#include "fanband/distance.hpp"
#include "fanband/graph.hpp"

namespace fanband {

// Exact bandwidth by branch and bound over left-to-right placements; n <= 12.
std::int64_t exact_bandwidth(const Graph& g);

// Exact local density from all-pairs BFS; at most 5000 vertices.
Rational exhaustive_local_density(const Graph& g);
Rational exhaustive_local_density(const GraphView& g);
Rational exhaustive_local_density(const DistanceMatrix& d);

struct OracleReport {
  std::string instance;
  std::string oracle_value;
  std::string tested_value;
  bool verdict = false;
  double seconds = 0;

  std::string line() const;
};

}  // namespace fanband
