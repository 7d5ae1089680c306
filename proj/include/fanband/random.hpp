#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace fanband {

// Derives independent generator seeds from one master seed and a stable label
// such as "inst/i=3/j=7". Results do not depend on call order.
class StreamSplitter {
 public:
  explicit StreamSplitter(std::uint64_t master_seed) : master_(master_seed) {}

  std::uint64_t master_seed() const { return master_; }
  std::uint64_t stream_seed(std::string_view label) const;
  std::mt19937_64 stream(std::string_view label) const { return std::mt19937_64(stream_seed(label)); }

 private:
  std::uint64_t master_;
};

std::uint64_t splitmix64(std::uint64_t x);

// Uniform double in [0,1) from a 64-bit key; used where a value must be a pure
// function of (stream, key) rather than of draw order.
double unit_interval_from_key(std::uint64_t stream_seed, std::uint64_t key);

}  // namespace fanband
