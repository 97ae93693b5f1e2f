#include "shapestat/kde.hpp"

#include <algorithm>
#include <cmath>

#include "shapestat/errors.hpp"
#include "shapestat/normal.hpp"

namespace shapestat {

namespace {

constexpr double kSqrtPi = 1.77245385090551602730;

double robust_scale(const Sample& s) {
  const std::size_t n = s.size();
  double sd = std::sqrt(s.variance() * static_cast<double>(n) / static_cast<double>(n - 1));
  const double q1 = s[(n - 1) / 4], q3 = s[(3 * (n - 1)) / 4];
  const double iqr_scale = (q3 - q1) / 1.349;
  double scale = sd;
  if (iqr_scale > 0.0) scale = std::min(scale, iqr_scale);
  return scale;
}

// sum over ordered pairs i<j of f(|x_i - x_j|), truncated at `cutoff`.
template <class F>
double pair_sum(const std::vector<double>& x, double cutoff, F&& f) {
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      const double d = x[j] - x[i];
      if (d > cutoff) break;  // values sorted
      acc += f(d);
    }
  }
  return acc;
}

// All pairwise gaps, ascending; lets a bandwidth search reuse one sorted
// array with early exit per evaluation.
std::vector<double> sorted_pair_gaps(const std::vector<double>& x) {
  std::vector<double> gaps;
  gaps.reserve(x.size() * (x.size() - 1) / 2);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) gaps.push_back(x[j] - x[i]);
  std::sort(gaps.begin(), gaps.end());
  return gaps;
}

double lscv_score_from_gaps(const std::vector<double>& gaps, double n, double h) {
  const double s2 = h * 1.41421356237309504880;
  double quad_pairs = 0.0, loo_pairs = 0.0;
  const double cq = 9.0 * s2, cl = 9.0 * h;
  for (double d : gaps) {
    if (d <= cq) quad_pairs += norm_pdf(d / s2) / s2;
    if (d <= cl) loo_pairs += norm_pdf(d / h) / h;
    if (d > cq && d > cl) break;
  }
  const double quad = (n * (norm_pdf(0.0) / s2) + 2.0 * quad_pairs) / (n * n);
  const double loo = 2.0 * loo_pairs / (n * (n - 1.0));
  return quad - 2.0 * loo;
}

}  // namespace

KdeFit::KdeFit(Sample points, double bandwidth)
    : points_(std::move(points)), bandwidth_(bandwidth) {
  if (!(bandwidth_ > 0.0)) throw numerical_error("kde bandwidth must be positive");
}

double KdeFit::pdf(double x) const {
  const auto& v = points_.values();
  const double h = bandwidth_;
  auto lo = std::lower_bound(v.begin(), v.end(), x - 10.0 * h);
  auto hi = std::upper_bound(v.begin(), v.end(), x + 10.0 * h);
  double acc = 0.0;
  for (auto it = lo; it != hi; ++it) acc += norm_pdf((x - *it) / h);
  return acc / (static_cast<double>(v.size()) * h);
}

double KdeFit::cdf(double x) const {
  const auto& v = points_.values();
  const double h = bandwidth_;
  auto lo = std::lower_bound(v.begin(), v.end(), x - 10.0 * h);
  auto hi = std::upper_bound(v.begin(), v.end(), x + 10.0 * h);
  double acc = static_cast<double>(lo - v.begin());  // fully passed points
  for (auto it = lo; it != hi; ++it) acc += norm_cdf((x - *it) / h);
  return acc / static_cast<double>(v.size());
}

double squared_density_integral(const KdeFit& fit) {
  const auto& x = fit.points().values();
  const double n = static_cast<double>(x.size());
  const double s2 = fit.bandwidth() * 1.41421356237309504880;  // sqrt(2) h
  const double pairs = pair_sum(x, 9.0 * s2, [&](double d) { return norm_pdf(d / s2) / s2; });
  return (n * (norm_pdf(0.0) / s2) + 2.0 * pairs) / (n * n);
}

double lscv_score(const Sample& sample, double h) {
  const auto& x = sample.values();
  const double n = static_cast<double>(x.size());
  const double quad = squared_density_integral(KdeFit(sample, h));
  const double loo_pairs = pair_sum(x, 9.0 * h, [&](double d) { return norm_pdf(d / h) / h; });
  const double loo = 2.0 * loo_pairs / (n * (n - 1.0));
  return quad - 2.0 * loo;
}

double lscv_bandwidth(const Sample& sample, bool* tie_warning) {
  if (sample.size() < 3) throw numerical_error("lscv needs at least 3 observations");
  if (!(sample.max() > sample.min())) throw numerical_error("lscv needs nonzero spread");
  if (tie_warning) {
    const std::size_t distinct = sample.distinct_weighted().first.size();
    *tie_warning = distinct < (sample.size() + 1) / 2;
  }
  const double n = static_cast<double>(sample.size());
  const std::vector<double> gaps = sorted_pair_gaps(sample.values());
  auto score = [&](double lh) { return lscv_score_from_gaps(gaps, n, std::exp(lh)); };

  const double scale = robust_scale(sample) * std::pow(n, -0.2);
  const double lo = std::log(0.05 * scale), hi = std::log(5.0 * scale);

  constexpr int kGrid = 61;
  double best_lh = lo, best_score = 0.0;
  for (int i = 0; i < kGrid; ++i) {
    const double lh = lo + (hi - lo) * static_cast<double>(i) / (kGrid - 1);
    const double sc = score(lh);
    if (i == 0 || sc < best_score) {
      best_score = sc;
      best_lh = lh;
    }
  }
  const double step = (hi - lo) / (kGrid - 1);
  double a = std::max(lo, best_lh - step), b = std::min(hi, best_lh + step);
  const double gr = 0.61803398874989484820;
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double fc = score(c), fd = score(d);
  while (b - a > 1e-5) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = score(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = score(d);
    }
  }
  const double refined = 0.5 * (a + b);
  // Keep the grid winner if refinement did not actually improve.
  if (std::min(fc, fd) < best_score) return std::exp(refined);
  return std::exp(best_lh);
}

namespace {

// Even-order Gaussian derivative functionals psi_r = n^-2 sum phi^(r)_g(d_ij).
double psi_functional(const Sample& sample, double g, int order) {
  const auto& x = sample.values();
  const double n = static_cast<double>(x.size());
  auto deriv = [order](double z) {
    const double z2 = z * z;
    double hermite;
    if (order == 4) {
      hermite = (z2 - 6.0) * z2 + 3.0;
    } else {  // order == 6
      hermite = ((z2 - 15.0) * z2 + 45.0) * z2 - 15.0;
    }
    return hermite * norm_pdf(z);
  };
  const double diag = deriv(0.0);
  const double pairs = pair_sum(x, 10.0 * g, [&](double d) { return deriv(d / g); });
  return (n * diag + 2.0 * pairs) / (n * n * std::pow(g, order + 1));
}

}  // namespace

double plugin_bandwidth(const Sample& sample) {
  if (sample.size() < 4) throw numerical_error("plug-in bandwidth needs at least 4 observations");
  if (!(sample.max() > sample.min()))
    throw numerical_error("plug-in bandwidth needs nonzero spread");
  const double n = static_cast<double>(sample.size());
  const double sigma = robust_scale(sample);

  // Stage constants for the Gaussian kernel: K4(0) = 3/sqrt(2 pi),
  // -K6(0) = 15/sqrt(2 pi), R(K) = 1/(2 sqrt(pi)), mu2(K) = 1.
  const double k4_0 = 3.0 * norm_pdf(0.0);
  const double k6_0 = -15.0 * norm_pdf(0.0);
  const double rk = 1.0 / (2.0 * kSqrtPi);

  // Normal-scale start for psi_8, then the two pilot stages.
  const double psi8 = 105.0 / (32.0 * kSqrtPi * std::pow(sigma, 9));
  const double g6 = std::pow(-2.0 * k6_0 / (psi8 * n), 1.0 / 9.0);
  const double psi6 = psi_functional(sample, g6, 6);
  const double normal_scale_h = std::pow(4.0 / (3.0 * n), 0.2) * sigma;
  if (!(psi6 < 0.0)) return normal_scale_h;
  const double g4 = std::pow(-2.0 * k4_0 / (psi6 * n), 1.0 / 7.0);
  const double psi4 = psi_functional(sample, g4, 4);
  if (!(psi4 > 0.0)) return normal_scale_h;
  const double h0 = std::pow(rk / (n * psi4), 0.2);

  // One fixed-point refinement: re-pilot at the scale implied by h0.
  const double g_of_h = std::pow(-2.0 * k4_0 * psi4 / psi6, 1.0 / 7.0) * std::pow(h0, 5.0 / 7.0);
  const double psi4_ref = psi_functional(sample, g_of_h, 4);
  if (!(psi4_ref > 0.0)) return h0;
  return std::pow(rk / (n * psi4_ref), 0.2);
}

}  // namespace shapestat
