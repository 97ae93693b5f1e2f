#pragma once

#include <cstdint>
#include <random>

namespace shapestat {

// One replicate's random stream. Streams are derived from a base seed plus
// key words, so replicate k always sees the same draws no matter how work is
// scheduled across threads.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : gen_(seed) {}

  // Open-interval uniform: never returns 0 or 1.
  double uniform() {
    return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1p-53;
  }

  double normal();
  double exponential(double rate);
  // Shape/scale parametrization.
  double gamma(double shape, double scale);
  // CDF 1 - (b/x)^a on x >= b.
  double pareto(double shape, double scale);

  std::uint64_t next_u64() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

// SplitMix64-style mixing of (seed, key1, key2) into a stream seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t key1, std::uint64_t key2);

// FNV-1a over a canonical byte string; used to key scenario streams.
std::uint64_t fnv1a(const void* data, std::size_t len, std::uint64_t h = 1469598103934665603ull);

}  // namespace shapestat
