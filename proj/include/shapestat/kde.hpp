#pragma once

#include "shapestat/sample.hpp"

namespace shapestat {

// Gaussian-kernel density estimate.
class KdeFit {
 public:
  KdeFit(Sample points, double bandwidth);

  double bandwidth() const { return bandwidth_; }
  const Sample& points() const { return points_; }

  double pdf(double x) const;
  double cdf(double x) const;

 private:
  Sample points_;
  double bandwidth_;
};

// Least-squares cross-validation score at bandwidth h, via the closed-form
// Gaussian convolution identities.
double lscv_score(const Sample& sample, double h);

// Minimizes the LSCV score over 61 log-spaced points of
// [0.05, 5] * sd * n^(-1/5), refined by golden-section search. Heavy ties are
// reported through tie_warning (the lower search bound guards the h->0
// degeneracy).
double lscv_bandwidth(const Sample& sample, bool* tie_warning = nullptr);

// Two-stage solve-the-equation plug-in bandwidth with one fixed-point
// refinement. Needs n >= 4.
double plugin_bandwidth(const Sample& sample);

// Closed-form integral of the squared estimate.
double squared_density_integral(const KdeFit& fit);

}  // namespace shapestat
