#include "shapestat/logconcave.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "shapestat/errors.hpp"
#include "shapestat/normal.hpp"

namespace shapestat {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Unit-interval exponential moments: Jk(a,b) = int_0^1 t^k exp((1-t)a + t b) dt
// and J11 with weight t(1-t). Taylor branches guard the d -> 0 cancellation.
double j00(double a, double b) {
  const double d = b - a;
  if (std::fabs(d) < 1e-12) return std::exp(a) * (1.0 + 0.5 * d);
  return std::exp(a) * std::expm1(d) / d;
}

double j01(double a, double b) {
  const double d = b - a;
  if (std::fabs(d) < 0.01) {
    return std::exp(a) *
           (0.5 + d * (1.0 / 3.0 + d * (0.125 + d * (1.0 / 30.0 + d / 144.0))));
  }
  return std::exp(a) * (std::exp(d) * (d - 1.0) + 1.0) / (d * d);
}

double j10(double a, double b) { return j01(b, a); }

double j02(double a, double b) {
  const double d = b - a;
  if (std::fabs(d) < 0.01) {
    return std::exp(a) *
           (1.0 / 3.0 + d * (0.25 + d * (0.1 + d * (1.0 / 36.0 + d / 168.0))));
  }
  return std::exp(a) * (std::exp(d) * (d * d - 2.0 * d + 2.0) - 2.0) / (d * d * d);
}

double j20(double a, double b) { return j02(b, a); }

double j11(double a, double b) {
  const double d = b - a;
  if (std::fabs(d) < 0.01) {
    return std::exp(a) *
           (1.0 / 6.0 + d * (1.0 / 12.0 + d * (0.025 + d * (1.0 / 180.0 + d / 1008.0))));
  }
  return std::exp(a) * (std::exp(d) * (d - 2.0) + d + 2.0) / (d * d * d);
}

struct Workspace {
  std::vector<double> x;   // distinct points
  std::vector<double> w;   // multiplicities / m
  std::vector<double> pw;  // prefix sum of w
  std::vector<double> pwx; // prefix sum of w*x

  double wsum(std::size_t lo, std::size_t hi) const {  // (lo, hi], prefix indices
    return pw[hi + 1] - pw[lo + 1];
  }
  // sum over j in (lo, hi] of w_j * x_j
  double wxsum(std::size_t lo, std::size_t hi) const { return pwx[hi + 1] - pwx[lo + 1]; }
};

// Data-weight inner product with the hat function peaking at index j,
// rising over (x[lo], x[j]] and falling over (x[j], x[hi]).
double hat_linear_term(const Workspace& ws, std::size_t lo, std::size_t j, std::size_t hi) {
  double acc = 0.0;
  if (j > lo) {
    const double len = ws.x[j] - ws.x[lo];
    // knots in (lo, j]: weight * (x - x_lo) / len
    acc += (ws.wxsum(lo, j) - ws.x[lo] * ws.wsum(lo, j)) / len;
  } else {
    acc += ws.w[j];  // left-boundary hat carries its own knot weight
  }
  if (hi > j + 1) {
    const double len = ws.x[hi] - ws.x[j];
    // knots in (j, hi-1]: weight * (x_hi - x) / len
    acc += (ws.x[hi] * ws.wsum(j, hi - 1) - ws.wxsum(j, hi - 1)) / len;
  }
  return acc;
}

void interpolate(const Workspace& ws, const std::vector<std::size_t>& active,
                 std::vector<double>& phi) {
  for (std::size_t s = 0; s + 1 < active.size(); ++s) {
    const std::size_t a = active[s], b = active[s + 1];
    const double xa = ws.x[a], xb = ws.x[b];
    for (std::size_t j = a + 1; j < b; ++j) {
      const double t = (ws.x[j] - xa) / (xb - xa);
      phi[j] = (1.0 - t) * phi[a] + t * phi[b];
    }
  }
}

// Solves the symmetric positive-definite tridiagonal system M delta = rhs.
void solve_tridiag(std::vector<double> diag, std::vector<double> off,
                   std::vector<double> rhs, std::vector<double>& out) {
  const std::size_t n = diag.size();
  for (std::size_t i = 1; i < n; ++i) {
    const double m = off[i - 1] / diag[i - 1];
    diag[i] -= m * off[i - 1];
    rhs[i] -= m * rhs[i - 1];
  }
  out.assign(n, 0.0);
  out[n - 1] = rhs[n - 1] / diag[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) out[i] = (rhs[i] - off[i] * out[i + 1]) / diag[i];
}

// Newton iterations over the values at the active knots. The data-weight
// coefficient of each knot value is fixed given the active set, so the
// restricted objective and gradient cost O(|active|).
void solve_subspace(const Workspace& ws, const std::vector<std::size_t>& active,
                    std::vector<double>& phi, double tol) {
  const std::size_t ns = active.size();
  std::vector<double> hw(ns);
  for (std::size_t s = 0; s < ns; ++s) {
    const std::size_t j = active[s];
    if (s == 0) {
      hw[s] = hat_linear_term(ws, j, j, active[s + 1]);
    } else if (s + 1 == ns) {
      const std::size_t lo = active[s - 1];
      hw[s] = (ws.wxsum(lo, j) - ws.x[lo] * ws.wsum(lo, j)) / (ws.x[j] - ws.x[lo]);
    } else {
      hw[s] = hat_linear_term(ws, active[s - 1], j, active[s + 1]);
    }
  }

  std::vector<double> v(ns), len(ns - 1);
  for (std::size_t s = 0; s < ns; ++s) v[s] = phi[active[s]];
  for (std::size_t s = 0; s + 1 < ns; ++s) len[s] = ws.x[active[s + 1]] - ws.x[active[s]];

  auto restricted = [&](const std::vector<double>& val) {
    double obj = 0.0;
    for (std::size_t s = 0; s < ns; ++s) obj += hw[s] * val[s];
    for (std::size_t s = 0; s + 1 < ns; ++s) obj -= len[s] * j00(val[s], val[s + 1]);
    return obj;
  };

  std::vector<double> grad(ns), diag(ns), off(ns - 1), delta, trial(ns);
  for (int it = 0; it < 200; ++it) {
    double gmax = 0.0;
    for (std::size_t s = 0; s < ns; ++s) {
      double integral = 0.0;
      if (s > 0) integral += len[s - 1] * j01(v[s - 1], v[s]);
      if (s + 1 < ns) integral += len[s] * j10(v[s], v[s + 1]);
      grad[s] = hw[s] - integral;
      gmax = std::max(gmax, std::fabs(grad[s]));
    }
    if (gmax <= tol) break;

    for (std::size_t s = 0; s < ns; ++s) {
      double h = 1e-12;
      if (s > 0) h += len[s - 1] * j02(v[s - 1], v[s]);
      if (s + 1 < ns) h += len[s] * j20(v[s], v[s + 1]);
      diag[s] = h;
    }
    for (std::size_t s = 0; s + 1 < ns; ++s) off[s] = len[s] * j11(v[s], v[s + 1]);
    solve_tridiag(diag, off, grad, delta);

    double ascent = 0.0;
    for (std::size_t s = 0; s < ns; ++s) ascent += grad[s] * delta[s];
    const double base = restricted(v);
    double step = 1.0;
    for (int ls = 0; ls < 60; ++ls) {
      for (std::size_t s = 0; s < ns; ++s) trial[s] = v[s] + step * delta[s];
      if (restricted(trial) >= base + 1e-4 * step * ascent) break;
      step *= 0.5;
    }
    v = trial;
  }

  for (std::size_t s = 0; s < ns; ++s) phi[active[s]] = v[s];
  interpolate(ws, active, phi);
}

}  // namespace

LogConcaveFit lc_fit(const Sample& sample, double tol, int max_iterations) {
  Workspace ws;
  {
    auto [pts, cnt] = sample.distinct_weighted();
    ws.x = std::move(pts);
    const double m = static_cast<double>(sample.size());
    ws.w.resize(cnt.size());
    for (std::size_t i = 0; i < cnt.size(); ++i) ws.w[i] = cnt[i] / m;
  }
  const std::size_t k = ws.x.size();
  if (k < 2) throw numerical_error("log-concave MLE needs at least 2 distinct values");
  ws.pw.assign(k + 1, 0.0);
  ws.pwx.assign(k + 1, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    ws.pw[i + 1] = ws.pw[i] + ws.w[i];
    ws.pwx[i + 1] = ws.pwx[i] + ws.w[i] * ws.x[i];
  }

  std::vector<std::size_t> active = {0, k - 1};
  std::vector<double> phi(k, -std::log(ws.x.back() - ws.x.front()));

  int outer = 0;
  double gap = kInf;
  bool converged = false;
  for (; outer < max_iterations; ++outer) {
    solve_subspace(ws, active, phi, 0.1 * tol);

    // Drop knots whose kink turned convex.
    std::size_t worst = 0;
    double worst_gain = 1e-12;
    for (std::size_t s = 1; s + 1 < active.size(); ++s) {
      const std::size_t a = active[s - 1], b = active[s], c = active[s + 1];
      const double sl = (phi[b] - phi[a]) / (ws.x[b] - ws.x[a]);
      const double sr = (phi[c] - phi[b]) / (ws.x[c] - ws.x[b]);
      if (sr - sl > worst_gain) {
        worst_gain = sr - sl;
        worst = s;
      }
    }
    if (worst != 0) {
      active.erase(active.begin() + static_cast<std::ptrdiff_t>(worst));
      interpolate(ws, active, phi);
      continue;
    }

    // Tent-function scores for inactive knots. Raising a tent at x_j is the
    // admissible perturbation (its peak is a concave kink; its feet land on
    // active knots); the objective ascends at rate score when score > 0.
    double max_score = 0.0;
    std::size_t best_j = 0, best_seg = 0;
    for (std::size_t s = 0; s + 1 < active.size(); ++s) {
      const std::size_t a = active[s], b = active[s + 1];
      for (std::size_t j = a + 1; j < b; ++j) {
        const double lin = hat_linear_term(ws, a, j, b);
        const double integral = (ws.x[j] - ws.x[a]) * j01(phi[a], phi[j]) +
                                (ws.x[b] - ws.x[j]) * j10(phi[j], phi[b]);
        const double score = lin - integral;
        if (score > max_score) {
          max_score = score;
          best_j = j;
          best_seg = s;
        }
      }
    }
    gap = max_score;
    if (max_score <= tol) {
      converged = true;
      break;
    }
    active.insert(active.begin() + static_cast<std::ptrdiff_t>(best_seg) + 1, best_j);
  }

  return LogConcaveFit(std::move(ws.x), std::move(phi), gap, outer, converged);
}

LogConcaveFit::LogConcaveFit(std::vector<double> knots, std::vector<double> phi,
                             double optimality_gap, int iterations, bool converged)
    : knots_(std::move(knots)),
      phi_(std::move(phi)),
      optimality_gap_(optimality_gap),
      iterations_(iterations),
      converged_(converged) {
  const std::size_t k = knots_.size();
  if (k < 2 || phi_.size() != k) throw numerical_error("invalid log-concave fit");

  // Exact renormalization; the optimizer already lands within tolerance.
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < k; ++i)
    total += (knots_[i + 1] - knots_[i]) * j00(phi_[i], phi_[i + 1]);
  const double shift = std::log(total);
  for (double& p : phi_) p -= shift;

  slope_.resize(k - 1);
  seg_mass_.resize(k - 1);
  cum_mass_.resize(k - 1);
  double acc = 0.0, m1 = 0.0, m2 = 0.0;
  for (std::size_t i = 0; i + 1 < k; ++i) {
    const double len = knots_[i + 1] - knots_[i];
    slope_[i] = (phi_[i + 1] - phi_[i]) / len;
    const double bd = slope_[i] * len;
    const double e0 = len * j00(0.0, bd);       // int_0^len e^{b r} dr / e^{phi_i}
    const double e1 = len * len * j01(0.0, bd);  // int r e^{b r} dr
    const double e2 = len * len * len * j02(0.0, bd);
    const double scale = std::exp(phi_[i]);
    seg_mass_[i] = scale * e0;
    m1 += scale * (knots_[i] * e0 + e1);
    m2 += scale * (knots_[i] * knots_[i] * e0 + 2.0 * knots_[i] * e1 + e2);
    acc += seg_mass_[i];
    cum_mass_[i] = acc;
  }
  cum_mass_.back() = 1.0;
  mean_ = m1;
  variance_ = std::max(0.0, m2 - m1 * m1);
}

double LogConcaveFit::log_density(double x) const {
  if (x < knots_.front() || x > knots_.back()) return -kInf;
  auto it = std::upper_bound(knots_.begin(), knots_.end(), x);
  std::size_t i = static_cast<std::size_t>(it - knots_.begin());
  if (i == 0) return phi_.front();
  if (i >= knots_.size()) return phi_.back();
  --i;
  return phi_[i] + slope_[i] * (x - knots_[i]);
}

std::pair<double, double> LogConcaveFit::log_linear_at(double x) const {
  auto it = std::upper_bound(knots_.begin(), knots_.end(), x);
  std::size_t i = static_cast<std::size_t>(it - knots_.begin());
  if (i > 0) --i;
  if (i >= slope_.size()) i = slope_.size() - 1;
  return {phi_[i] + slope_[i] * (x - knots_[i]), slope_[i]};
}

double LogConcaveFit::pdf(double x) const {
  const double l = log_density(x);
  return l == -kInf ? 0.0 : std::exp(l);
}

double LogConcaveFit::cdf(double x) const {
  if (x <= knots_.front()) return 0.0;
  if (x >= knots_.back()) return 1.0;
  auto it = std::upper_bound(knots_.begin(), knots_.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - knots_.begin()) - 1;
  const double base = i == 0 ? 0.0 : cum_mass_[i - 1];
  const double r = x - knots_[i];
  const double b = slope_[i];
  const double partial = std::exp(phi_[i]) * r * j00(0.0, b * r);
  return std::min(1.0, base + partial);
}

double LogConcaveFit::quantile(double t) const {
  if (!(t > 0.0 && t < 1.0)) throw input_error("log-concave quantile requires t in (0,1)");
  auto it = std::lower_bound(cum_mass_.begin(), cum_mass_.end(), t);
  const std::size_t i = static_cast<std::size_t>(it - cum_mass_.begin());
  const double base = i == 0 ? 0.0 : cum_mass_[i - 1];
  const double r = t - base;
  const double b = slope_[i];
  const double len = knots_[i + 1] - knots_[i];
  double d;
  if (std::fabs(b) < 1e-12) {
    d = r * std::exp(-phi_[i]);
  } else {
    const double arg = b * r * std::exp(-phi_[i]);
    d = arg <= -1.0 ? len : std::log1p(arg) / b;
  }
  return knots_[i] + std::clamp(d, 0.0, len);
}

std::vector<double> lc_sample(const LogConcaveFit& fit, std::size_t count, RngStream& stream) {
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = fit.quantile(stream.uniform());
  return out;
}

SmoothedLogConcaveFit lc_smooth(const LogConcaveFit& fit, const Sample& sample) {
  const double s2 = sample.variance();
  double gamma_sq = s2 - fit.variance();
  bool clamped = false;
  if (gamma_sq < 0.0) {
    gamma_sq = 0.0;
    clamped = true;
  }
  return SmoothedLogConcaveFit(fit, gamma_sq, clamped);
}

SmoothedLogConcaveFit::SmoothedLogConcaveFit(LogConcaveFit base, double gamma_sq,
                                             bool variance_clamped)
    : base_(std::move(base)),
      gamma_sq_(gamma_sq),
      gamma_(std::sqrt(gamma_sq)),
      variance_clamped_(variance_clamped) {}

namespace {

// log(Phi(hi) - Phi(lo)) for hi > lo, stable in both tails.
double log_norm_cdf_diff(double hi, double lo) {
  if (lo >= 0.0) {
    const double a = norm_logsf(lo), b = norm_logsf(hi);
    return a + std::log1p(-std::exp(b - a));
  }
  if (hi <= 0.0) return log_norm_cdf_diff(-lo, -hi);
  const double v = norm_cdf(hi) - norm_cdf(lo);
  return v > 0.0 ? std::log(v) : -kInf;
}

}  // namespace

// int over segment i of exp(phi(s)) * gaussian_kernel(x - s) ds.
double SmoothedLogConcaveFit::segment_gauss_mass(std::size_t i, double x) const {
  const auto& knots = base_.knots();
  const auto& phi = base_.phi();
  const double u = knots[i], v = knots[i + 1];
  const double b = (phi[i + 1] - phi[i]) / (v - u);
  const double expo = phi[i] + b * (x - u) + 0.5 * b * b * gamma_sq_;
  const double hi = (x - u) / gamma_ + b * gamma_;
  const double lo = (x - v) / gamma_ + b * gamma_;
  const double ld = log_norm_cdf_diff(hi, lo);
  return ld == -kInf ? 0.0 : std::exp(expo + ld);
}

double SmoothedLogConcaveFit::pdf(double x) const {
  if (gamma_sq_ <= 0.0) return base_.pdf(x);
  const auto& knots = base_.knots();
  const double reach = 12.0 * gamma_;
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    if (knots[i + 1] < x - reach || knots[i] > x + reach) continue;
    acc += segment_gauss_mass(i, x);
  }
  return acc;
}

double SmoothedLogConcaveFit::cdf(double x) const {
  if (gamma_sq_ <= 0.0) return base_.cdf(x);
  const auto& knots = base_.knots();
  const auto& phi = base_.phi();
  const double reach = 12.0 * gamma_;
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const double u = knots[i], v = knots[i + 1];
    if (v < x - reach) {
      acc += base_.segment_mass()[i];  // kernel mass fully to the left of x
      continue;
    }
    if (u > x + reach) continue;
    const double len = v - u;
    const double b = (phi[i + 1] - phi[i]) / len;
    if (std::fabs(b) * len < 3e-4) {
      // Second-order expansion in b using Gaussian partial moments.
      const double thi = (x - u) / gamma_, tlo = (x - v) / gamma_;
      auto p0 = [](double t) { return t * norm_cdf(t) + norm_pdf(t); };
      auto p1 = [](double t) { return 0.5 * ((t * t - 1.0) * norm_cdf(t) + t * norm_pdf(t)); };
      auto p2 = [](double t) {
        return (t * t * t * norm_cdf(t) + (t * t + 2.0) * norm_pdf(t)) / 3.0;
      };
      const double q0 = p0(thi) - p0(tlo);
      const double q1 = p1(thi) - p1(tlo);
      const double q2 = p2(thi) - p2(tlo);
      const double xu = x - u;
      const double m0 = gamma_ * q0;
      const double m1 = gamma_ * (xu * q0 - gamma_ * q1);
      const double m2 = gamma_ * (xu * xu * q0 - 2.0 * xu * gamma_ * q1 + gamma_sq_ * q2);
      acc += std::exp(phi[i]) * (m0 + b * m1 + 0.5 * b * b * m2);
    } else {
      const double upper = std::exp(phi[i + 1]) * norm_cdf((x - v) / gamma_);
      const double lower = std::exp(phi[i]) * norm_cdf((x - u) / gamma_);
      acc += (upper - lower + segment_gauss_mass(i, x)) / b;
    }
  }
  return std::clamp(acc, 0.0, 1.0);
}

double squared_density_integral(const LogConcaveFit& fit) {
  const auto& knots = fit.knots();
  const auto& phi = fit.phi();
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i)
    acc += (knots[i + 1] - knots[i]) * j00(2.0 * phi[i], 2.0 * phi[i + 1]);
  return acc;
}

std::vector<double> smooth_sample(const SmoothedLogConcaveFit& fit, std::size_t count,
                                  RngStream& stream) {
  std::vector<double> out(count);
  const double g = std::sqrt(fit.gamma_sq());
  for (std::size_t i = 0; i < count; ++i)
    out[i] = fit.base().quantile(stream.uniform()) + g * stream.normal();
  return out;
}

}  // namespace shapestat
