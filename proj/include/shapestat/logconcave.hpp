#pragma once

#include <cstddef>
#include <vector>

#include "shapestat/rng.hpp"
#include "shapestat/sample.hpp"

namespace shapestat {

// Log-concave MLE: concave piecewise-linear log-density with knots at the
// distinct data points, zero density outside [knots.front(), knots.back()].
class LogConcaveFit {
 public:
  LogConcaveFit(std::vector<double> knots, std::vector<double> phi,
                double optimality_gap, int iterations, bool converged);

  const std::vector<double>& knots() const { return knots_; }
  const std::vector<double>& phi() const { return phi_; }
  double optimality_gap() const { return optimality_gap_; }
  int iterations() const { return iterations_; }
  bool converged() const { return converged_; }

  double log_density(double x) const;  // -inf outside the support
  // (log-density, slope) of the linear segment containing x (x inside support).
  std::pair<double, double> log_linear_at(double x) const;
  double pdf(double x) const;
  double cdf(double x) const;
  double quantile(double t) const;  // t in (0,1)

  double mean() const { return mean_; }
  double variance() const { return variance_; }
  double support_lo() const { return knots_.front(); }
  double support_hi() const { return knots_.back(); }

  // Mass of (knots[i], knots[i+1]] and its running sum.
  const std::vector<double>& segment_mass() const { return seg_mass_; }
  const std::vector<double>& cum_mass() const { return cum_mass_; }

 private:
  std::vector<double> knots_;
  std::vector<double> phi_;
  std::vector<double> slope_;     // per segment
  std::vector<double> seg_mass_;  // per segment
  std::vector<double> cum_mass_;  // cum_mass_[i] = mass of (-inf, knots[i+1]]
  double mean_ = 0.0;
  double variance_ = 0.0;
  double optimality_gap_ = 0.0;
  int iterations_ = 0;
  bool converged_ = true;
};

// Maximizes (1/m) sum phi(X_i) - integral exp(phi) over concave piecewise
// linear phi by an active-set method: Newton steps on the current knot set,
// tent-function directional derivatives to activate knots. Requires at least
// two distinct values.
LogConcaveFit lc_fit(const Sample& sample, double tol = 1e-8, int max_iterations = 500);

// i.i.d. draws by inverse CDF; deterministic given the stream.
std::vector<double> lc_sample(const LogConcaveFit& fit, std::size_t count, RngStream& stream);

// Base MLE convolved with N(0, gamma_sq) where gamma_sq matches the fit
// variance to the sample variance (divisor m).
class SmoothedLogConcaveFit {
 public:
  SmoothedLogConcaveFit(LogConcaveFit base, double gamma_sq, bool variance_clamped);

  const LogConcaveFit& base() const { return base_; }
  double gamma_sq() const { return gamma_sq_; }
  bool variance_clamped() const { return variance_clamped_; }

  double pdf(double x) const;
  double cdf(double x) const;
  double mean() const { return base_.mean(); }
  double variance() const { return base_.variance() + gamma_sq_; }

 private:
  double segment_gauss_mass(std::size_t i, double x) const;
  LogConcaveFit base_;
  double gamma_sq_ = 0.0;
  double gamma_ = 0.0;
  bool variance_clamped_ = false;
};

SmoothedLogConcaveFit lc_smooth(const LogConcaveFit& fit, const Sample& sample);

std::vector<double> smooth_sample(const SmoothedLogConcaveFit& fit, std::size_t count,
                                  RngStream& stream);

// Exact integral of the squared density.
double squared_density_integral(const LogConcaveFit& fit);

}  // namespace shapestat
