#include "shapestat/dominance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "shapestat/errors.hpp"
#include "shapestat/kde.hpp"
#include "shapestat/logconcave.hpp"
#include "shapestat/normal.hpp"
#include "shapestat/quadrature.hpp"
#include "shapestat/unimodal.hpp"

namespace shapestat {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::string family_name(Family f) {
  switch (f) {
    case Family::kEmpirical: return "empirical";
    case Family::kUnimodal: return "unimodal";
    case Family::kLogConcave: return "logconcave";
    case Family::kLogConcaveSmoothed: return "logconcave-smoothed";
  }
  return "?";
}

std::string stat_name(StatKind s) {
  switch (s) {
    case StatKind::kMinT: return "min-t";
    case StatKind::kTsep: return "tsep";
    case StatKind::kWrs: return "wrs";
  }
  return "?";
}

Family family_from_name(const std::string& name) {
  if (name == "empirical") return Family::kEmpirical;
  if (name == "unimodal") return Family::kUnimodal;
  if (name == "logconcave") return Family::kLogConcave;
  if (name == "logconcave-smoothed") return Family::kLogConcaveSmoothed;
  throw input_error("unknown family: " + name);
}

StatKind stat_from_name(const std::string& name) {
  if (name == "min-t") return StatKind::kMinT;
  if (name == "tsep") return StatKind::kTsep;
  if (name == "wrs") return StatKind::kWrs;
  throw input_error("unknown statistic: " + name);
}

DistributionHandle fit_handle(const Sample& sample, Family family, double eta) {
  DistributionHandle h;
  h.family = family;
  h.sample_size = sample.size();
  h.jump_points = sample.distinct_weighted().first;
  switch (family) {
    case Family::kEmpirical: {
      auto ecdf = std::make_shared<Ecdf>(sample);
      h.cdf = [ecdf](double x) { return (*ecdf)(x); };
      h.support_lo = sample.min();
      h.support_hi = sample.max();
      break;
    }
    case Family::kUnimodal: {
      BirgeConfig cfg;
      cfg.eta = eta > 0.0 ? eta : 1.0 / static_cast<double>(sample.size());
      auto fit = std::make_shared<StepDensity>(birge_fit(sample, cfg));
      h.cdf = [fit](double x) { return fit->cdf(x); };
      h.pdf = [fit](double x) { return fit->pdf(x); };
      h.jump_points = fit->breakpoints;
      h.support_lo = fit->breakpoints.front();
      h.support_hi = fit->breakpoints.back();
      break;
    }
    case Family::kLogConcave: {
      auto fit = std::make_shared<LogConcaveFit>(lc_fit(sample));
      h.cdf = [fit](double x) { return fit->cdf(x); };
      h.pdf = [fit](double x) { return fit->pdf(x); };
      h.support_lo = fit->support_lo();
      h.support_hi = fit->support_hi();
      break;
    }
    case Family::kLogConcaveSmoothed: {
      auto fit = std::make_shared<SmoothedLogConcaveFit>(lc_smooth(lc_fit(sample), sample));
      h.cdf = [fit](double x) { return fit->cdf(x); };
      h.pdf = [fit](double x) { return fit->pdf(x); };
      const double pad = 8.0 * std::sqrt(fit->gamma_sq());
      h.support_lo = fit->base().support_lo() - pad;
      h.support_hi = fit->base().support_hi() + pad;
      break;
    }
  }
  return h;
}

namespace {

// Eq. 4.1 objective at a point; NaN marks a skip (0/0).
double min_t_at(const DistributionHandle& f1, const DistributionHandle& f2, double x) {
  const double a = f1.cdf(x);
  const double b = f2.cdf(x);
  const double num = b - a;
  const double den2 = a * (1.0 - a) / static_cast<double>(f1.sample_size) +
                      b * (1.0 - b) / static_cast<double>(f2.sample_size);
  if (den2 <= 0.0) {
    if (num < 0.0) return -kInf;
    if (num > 0.0) return kInf;
    return std::numeric_limits<double>::quiet_NaN();
  }
  return num / std::sqrt(den2);
}

}  // namespace

double stat_min_t(const DistributionHandle& f1, const DistributionHandle& f2,
                  const TrimInterval& interval) {
  const double lo = interval.lower, hi = interval.upper;
  std::vector<double> candidates;
  candidates.push_back(lo);
  candidates.push_back(hi);
  for (const auto* h : {&f1, &f2})
    for (double v : h->jump_points)
      if (v >= lo && v <= hi) candidates.push_back(v);

  const bool continuous =
      f1.family != Family::kEmpirical || f2.family != Family::kEmpirical;
  if (continuous && hi > lo) {
    for (int i = 0; i <= 512; ++i)
      candidates.push_back(lo + (hi - lo) * static_cast<double>(i) / 512.0);
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  double best = kInf;
  bool any = false, any_pos_inf = false;
  std::size_t best_idx = 0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const double v = min_t_at(f1, f2, candidates[i]);
    if (std::isnan(v)) continue;
    if (v == kInf) {
      any_pos_inf = true;
      continue;
    }
    if (!any || v < best) {
      best = v;
      best_idx = i;
    }
    any = true;
    if (v == -kInf) return -kInf;
  }
  if (!any) return any_pos_inf ? kInf : 0.0;

  if (continuous) {
    // Golden-section polish between the neighbors of the best candidate.
    double a = best_idx > 0 ? candidates[best_idx - 1] : candidates[best_idx];
    double b = best_idx + 1 < candidates.size() ? candidates[best_idx + 1] : candidates[best_idx];
    const double gr = 0.61803398874989484820;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = min_t_at(f1, f2, c), fd = min_t_at(f1, f2, d);
    while (b - a > 1e-6 * std::max(1.0, hi - lo)) {
      if (std::isnan(fc) || std::isnan(fd)) break;
      if (fc < fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - gr * (b - a);
        fc = min_t_at(f1, f2, c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + gr * (b - a);
        fd = min_t_at(f1, f2, d);
      }
    }
    for (double v : {fc, fd})
      if (!std::isnan(v)) best = std::min(best, v);
  }
  return best;
}

double stat_tsep(const DistributionHandle& f1, const DistributionHandle& f2,
                 const Ecdf& pooled, double p) {
  if (!(p > 0.0 && p < 0.5)) throw input_error("tsep requires p in (0, 1/2)");
  const auto& pts = pooled.support_points();
  const auto& cum = pooled.cum_probs();
  const double m = static_cast<double>(f1.sample_size);
  const double n = static_cast<double>(f2.sample_size);
  const double N = m + n;

  double best = kInf;
  double prev_cum = 0.0;
  for (std::size_t j = 0; j < pts.size(); ++j) {
    // H_N^-1(z) == pts[j] exactly for z in (prev_cum, cum[j]].
    const double a = std::max(prev_cum, p);
    const double b = std::min(cum[j], 1.0 - p);
    prev_cum = cum[j];
    if (!(a <= b)) continue;
    const double c = f2.cdf(pts[j]) - f1.cdf(pts[j]);
    double v;
    if (c == 0.0) {
      v = 0.0;
    } else {
      const double za = a * (1.0 - a), zb = b * (1.0 - b);
      double z;
      if (c < 0.0) {
        z = std::min(za, zb);  // stretch the ratio using the endpoint far from 1/2
      } else if (a <= 0.5 && 0.5 <= b) {
        z = 0.25;
      } else {
        z = std::max(za, zb);
      }
      v = c / std::sqrt(z);
    }
    best = std::min(best, v);
  }
  if (best == kInf) best = 0.0;  // the trimmed band was empty
  return std::sqrt(m * n / N) * best;
}

double stat_wrs(const DistributionHandle& f1, const DistributionHandle& f2,
                const Sample& x, const Sample& y) {
  const double m = static_cast<double>(x.size());
  const double n = static_cast<double>(y.size());
  const double N = m + n;
  double integral;  // int F2 dF1
  if (f1.family == Family::kEmpirical && f2.family == Family::kEmpirical) {
    const auto& ys = y.values();
    double acc = 0.0;
    for (double xi : x.values()) {
      const auto lb = std::lower_bound(ys.begin(), ys.end(), xi);
      const auto ub = std::upper_bound(ys.begin(), ys.end(), xi);
      acc += static_cast<double>(lb - ys.begin()) + 0.5 * static_cast<double>(ub - lb);
    }
    integral = acc / (m * n);
  } else {
    std::vector<double> hints = f1.jump_points;
    hints.insert(hints.end(), f2.jump_points.begin(), f2.jump_points.end());
    integral = integrate([&](double t) { return f2.cdf(t) * f1.pdf(t); }, f1.support_lo,
                         f1.support_hi, 1e-8, hints);
  }
  return std::sqrt(12.0 * m * n / (N + 1.0)) * (integral - 0.5);
}

double sigma_tsep(double f_at, double g_at, double lambda) {
  if (!(f_at > 0.0 && g_at > 0.0)) throw input_error("sigma_tsep requires positive densities");
  if (!(lambda > 0.0 && lambda < 1.0)) throw input_error("sigma_tsep requires lambda in (0,1)");
  if (f_at == g_at) return 1.0;  // exact by cancellation of the mixture weights
  const double num = lambda * f_at * f_at + (1.0 - lambda) * g_at * g_at;
  const double den = lambda * f_at + (1.0 - lambda) * g_at;
  return num / (den * den);
}

double compute_statistic(StatKind statistic, const DistributionHandle& fx,
                         const DistributionHandle& fy, const Sample& x, const Sample& y,
                         const Ecdf& pooled, const TrimInterval& interval, double p) {
  switch (statistic) {
    case StatKind::kMinT: return stat_min_t(fx, fy, interval);
    case StatKind::kTsep: return stat_tsep(fx, fy, pooled, p);
    case StatKind::kWrs: return stat_wrs(fx, fy, x, y);
  }
  return 0.0;
}

DominanceTestResult run_dominance_test(const Sample& x, const Sample& y, Family family,
                                       StatKind statistic, double p, double alpha,
                                       bool conservative) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw input_error("alpha must lie in (0,1)");
  const double m = static_cast<double>(x.size());
  const double n = static_cast<double>(y.size());
  const double N = m + n;

  Ecdf pooled(pool(x, y));
  TrimInterval interval = trim_interval(pooled, p);
  const double eta = 1.0 / N;
  DistributionHandle fx = fit_handle(x, family, eta);
  DistributionHandle fy = fit_handle(y, family, eta);

  DominanceTestResult r;
  r.statistic = statistic;
  r.family = family;
  r.interval = interval;
  r.m = x.size();
  r.n = y.size();
  r.lambda_hat = m / N;
  r.c_mn = std::max(std::sqrt(N / m), std::sqrt(N / n));
  r.conservative = conservative && statistic == StatKind::kTsep;
  r.asymptotics_unknown = family == Family::kLogConcaveSmoothed ||
                          (family == Family::kLogConcave && statistic == StatKind::kWrs);
  r.value = compute_statistic(statistic, fx, fy, x, y, pooled, interval, p);

  const double z_alpha = norm_quantile(1.0 - alpha);
  const double scale = r.conservative ? r.c_mn : 1.0;
  r.critical_value = scale * z_alpha;
  if (r.value == kInf) {
    r.p_value = 0.0;
    r.reject = true;
  } else if (r.value == -kInf) {
    r.p_value = 1.0;
    r.reject = false;
  } else {
    r.p_value = 1.0 - norm_cdf(r.value / scale);
    r.reject = r.value > r.critical_value;
  }
  return r;
}

}  // namespace shapestat
