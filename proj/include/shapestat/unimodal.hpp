#pragma once

#include <cstddef>
#include <vector>

#include "shapestat/sample.hpp"

namespace shapestat {

// Piecewise-constant unimodal density: height[i] on (breakpoints[i], breakpoints[i+1]].
struct StepDensity {
  std::vector<double> breakpoints;  // sorted, size k+1
  std::vector<double> heights;      // size k, nonnegative
  double mode_location = 0.0;

  double pdf(double x) const;
  double cdf(double x) const;
  // inf{x : cdf(x) >= t}, t in (0,1).
  double quantile(double t) const;
  double total_mass() const;
};

struct BirgeConfig {
  double eta = 0.0;  // <= 0 means 1/n at fit time
};

enum class MonotoneDirection { kDecreasing, kIncreasing };

// Weighted least-squares nonincreasing fit by pool-adjacent-violators.
std::vector<double> pava_antitonic(const std::vector<double>& values,
                                   const std::vector<double>& weights);

// Monotone density MLE. Decreasing: the anchor (<= min) is the left support
// endpoint and heights are the slopes of the least concave majorant of the
// ECDF. Increasing: mirrored, anchor >= max is the right endpoint.
// A data value equal to the anchor folds its mass into the adjacent segment.
StepDensity grenander_monotone(const Sample& sample, MonotoneDirection direction,
                               double anchor);

// Mode-known unimodal MLE: mixture of an increasing fit left of the mode
// (weight = fraction of observations <= mode) and a decreasing fit right of it.
StepDensity grenander_mode_known(const Sample& sample, double mode);

// Unimodal estimator selecting the mode among the data points so that the
// fitted CDF minimizes the Kolmogorov-Smirnov distance to the ECDF; the
// exhaustive search meets the eta guarantee with zero gap. Smallest mode wins
// ties.
StepDensity birge_fit(const Sample& sample, const BirgeConfig& cfg = {});

// sup_x |F(x) - ECDF(x)| for a continuous piecewise-linear CDF given by a
// step density, against the sample's ECDF.
double ks_distance(const StepDensity& density, const Sample& sample);

double squared_density_integral(const StepDensity& density);

}  // namespace shapestat
