#pragma once

#include <functional>
#include <string>
#include <vector>

#include "shapestat/kde.hpp"
#include "shapestat/logconcave.hpp"
#include "shapestat/sample.hpp"
#include "shapestat/unimodal.hpp"

namespace shapestat {

// Density wrapper for the affinity integral. Piecewise log-linear densities
// (step and log-concave) integrate exactly; the rest go through quadrature.
struct DensityView {
  std::function<double(double)> pdf;
  // Log-density and slope on the cell (l, r); false when zero there.
  std::function<bool(double l, double r, double* mid_log, double* slope)> log_cell;
  std::vector<double> breakpoints;
  double lo = 0.0;
  double hi = 0.0;
  double mass = 1.0;
  bool exact = false;
};

DensityView make_view(const StepDensity& d);
DensityView make_view(const LogConcaveFit& d);
DensityView make_view(const SmoothedLogConcaveFit& d);
DensityView make_view(const KdeFit& d);

// Squared Hellinger distance 1 - integral sqrt(f g). Exact lattice sums when
// both views are piecewise log-linear; adaptive quadrature (tol 1e-8)
// otherwise. Inputs must integrate to 1 within 1e-6.
double hellinger_sq(const DensityView& fa, const DensityView& fb);

enum class HellFamily { kUnimodal, kLogConcave, kLogConcaveSmoothed, kKdeNaive, kKdeBiasCorrected };

std::string hell_family_name(HellFamily f);
HellFamily hell_family_from_name(const std::string& name);

enum class InfluenceSide { kF, kG };

// First-order influence function of the squared Hellinger functional,
// evaluated at x against densities fa (f side) and fb (g side).
double influence_psi(InfluenceSide which, double x, const DensityView& fa,
                     const DensityView& fb, double h2);

struct HellingerResult {
  HellFamily family = HellFamily::kLogConcave;
  double h2 = 0.0;        // clamped to [0,1]
  double h2_raw = 0.0;    // before clamping (bias-corrected KDE can exit [0,1])
  double sigma2 = 0.0;
  double ci_level = 0.95;
  bool has_ci = true;
  double ci_h2_lo = 0.0, ci_h2_hi = 0.0;          // clamped to [0,1]
  double ci_h2_raw_lo = 0.0, ci_h2_raw_hi = 0.0;  // unclamped Wald interval
  double ci_h_lo = 0.0, ci_h_hi = 0.0;            // square roots of the clamped interval
  double lambda_hat = 0.0;
  std::size_t n_x = 0, n_y = 0;
};

// Plug-in estimate with Wald interval; kde-naive carries no interval.
HellingerResult estimate_hellinger(const Sample& x, const Sample& y, HellFamily family,
                                   double ci_level = 0.95);

// One-step bias-corrected KDE estimate with LSCV bandwidths.
HellingerResult kde_bias_corrected(const Sample& x, const Sample& y, double ci_level = 0.95);

// (2 h2 - h2^2) / (4 lambda (1 - lambda)).
double hellinger_sigma2(double h2, double lambda);

}  // namespace shapestat
