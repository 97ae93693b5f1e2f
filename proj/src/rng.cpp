#include "shapestat/rng.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>

#include "shapestat/errors.hpp"
#include "shapestat/normal.hpp"
#include "shapestat/parallel.hpp"

namespace shapestat {

double RngStream::normal() { return norm_quantile(uniform()); }

double RngStream::exponential(double rate) {
  if (!(rate > 0.0)) throw input_error("exponential rate must be positive");
  return -std::log(uniform()) / rate;
}

// Marsaglia-Tsang squeeze; shape < 1 boosted via the U^(1/a) trick.
double RngStream::gamma(double shape, double scale) {
  if (!(shape > 0.0 && scale > 0.0)) throw input_error("gamma shape/scale must be positive");
  if (shape < 1.0) {
    const double u = uniform();
    return gamma(shape + 1.0, scale) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform();
    if (u < 1.0 - 0.0331 * x * x * x * x) return scale * d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return scale * d * v;
  }
}

double RngStream::pareto(double shape, double scale) {
  if (!(shape > 0.0 && scale > 0.0)) throw input_error("pareto shape/scale must be positive");
  return scale * std::pow(uniform(), -1.0 / shape);
}

static std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t key1, std::uint64_t key2) {
  std::uint64_t s = splitmix(seed);
  s = splitmix(s ^ key1);
  s = splitmix(s ^ key2);
  return s;
}

std::uint64_t fnv1a(const void* data, std::size_t len, std::uint64_t h) {
  const unsigned char* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

int max_threads() {
  int avail = 1;
#if defined(_OPENMP)
  avail = omp_get_max_threads();
#endif
  if (const char* env = std::getenv("SHAPESTAT_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<int>(v);
  }
  return avail;
}

double kahan_sum(const double* values, std::size_t n) {
  double s = 0.0, c = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double y = values[i] - c;
    const double t = s + y;
    c = (t - s) - y;
    s = t;
  }
  return s;
}

}  // namespace shapestat
