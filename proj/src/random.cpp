#include "fanband/random.hpp"

namespace fanband {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t StreamSplitter::stream_seed(std::string_view label) const {
  // FNV-1a over the label, then mixed with the master seed.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : label) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return splitmix64(splitmix64(master_) ^ h);
}

double unit_interval_from_key(std::uint64_t stream_seed, std::uint64_t key) {
  const std::uint64_t bits = splitmix64(stream_seed ^ splitmix64(key));
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

}  // namespace fanband
