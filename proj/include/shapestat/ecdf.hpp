#pragma once

#include <cstddef>
#include <vector>

#include "shapestat/sample.hpp"

namespace shapestat {

// Right-continuous empirical distribution function. Tie multiplicity folds
// into step heights; the last cumulative probability is exactly 1.
class Ecdf {
 public:
  explicit Ecdf(const Sample& sample);

  // #{values <= x} / n.
  double operator()(double x) const;

  // Generalized inverse inf{x : F(x) >= t}, t in (0,1).
  double quantile(double t) const;

  std::size_t sample_size() const { return sample_size_; }
  const std::vector<double>& support_points() const { return support_points_; }
  const std::vector<double>& cum_probs() const { return cum_probs_; }

 private:
  std::vector<double> support_points_;  // sorted distinct values
  std::vector<double> cum_probs_;       // nondecreasing, last = 1
  std::size_t sample_size_ = 0;
};

// Pooled-quantile trimmed interval [H^-1(p), H^-1(1-p)].
struct TrimInterval {
  double lower = 0.0;
  double upper = 0.0;
  double p = 0.0;
  bool degenerate = false;  // lower == upper (all pooled values equal)
};

// Requires 0 < p < 1/2. A degenerate pooled sample yields lower == upper,
// returned with the warning flag set.
TrimInterval trim_interval(const Ecdf& pooled, double p);

}  // namespace shapestat
