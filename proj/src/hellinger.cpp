#include "shapestat/hellinger.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "shapestat/errors.hpp"
#include "shapestat/normal.hpp"
#include "shapestat/quadrature.hpp"

namespace shapestat {

namespace {

double exp_cell_integral(double lo_log, double hi_log, double len) {
  // int over a cell of exp(linear log), endpoints lo_log -> hi_log.
  const double d = hi_log - lo_log;
  if (std::fabs(d) < 1e-12) return len * std::exp(lo_log) * (1.0 + 0.5 * d);
  return len * std::exp(lo_log) * std::expm1(d) / d;
}
}  // namespace

DensityView make_view(const StepDensity& d) {
  auto ptr = std::make_shared<StepDensity>(d);
  DensityView v;
  v.pdf = [ptr](double x) { return ptr->pdf(x); };
  v.breakpoints = ptr->breakpoints;
  v.lo = ptr->breakpoints.front();
  v.hi = ptr->breakpoints.back();
  v.mass = ptr->total_mass();
  v.exact = true;
  v.log_cell = [ptr](double l, double r, double* mid_log, double* slope) {
    const double h = ptr->pdf(0.5 * (l + r));
    if (!(h > 0.0)) return false;
    *mid_log = std::log(h);
    *slope = 0.0;
    return true;
  };
  return v;
}

DensityView make_view(const LogConcaveFit& d) {
  auto ptr = std::make_shared<LogConcaveFit>(d);
  DensityView v;
  v.pdf = [ptr](double x) { return ptr->pdf(x); };
  v.breakpoints = ptr->knots();
  v.lo = ptr->support_lo();
  v.hi = ptr->support_hi();
  v.mass = 1.0;
  v.exact = true;
  v.log_cell = [ptr](double l, double r, double* mid_log, double* slope) {
    const double mid = 0.5 * (l + r);
    if (mid < ptr->support_lo() || mid > ptr->support_hi()) return false;
    const auto [value, sl] = ptr->log_linear_at(mid);
    *mid_log = value;
    *slope = sl;
    return true;
  };
  return v;
}

DensityView make_view(const SmoothedLogConcaveFit& d) {
  auto ptr = std::make_shared<SmoothedLogConcaveFit>(d);
  DensityView v;
  v.pdf = [ptr](double x) { return ptr->pdf(x); };
  // smooth integrand: a few quantile anchors are enough to seed panels
  for (int q = 1; q < 10; ++q) v.breakpoints.push_back(ptr->base().quantile(0.1 * q));
  const double pad = 8.0 * std::sqrt(ptr->gamma_sq());
  v.lo = ptr->base().support_lo() - pad;
  v.hi = ptr->base().support_hi() + pad;
  v.mass = 1.0;
  v.exact = ptr->gamma_sq() <= 0.0;
  if (v.exact) {
    auto base = std::make_shared<LogConcaveFit>(ptr->base());
    v.log_cell = make_view(*base).log_cell;
  }
  return v;
}

DensityView make_view(const KdeFit& d) {
  auto ptr = std::make_shared<KdeFit>(d);
  DensityView v;
  v.pdf = [ptr](double x) { return ptr->pdf(x); };
  // smooth integrand: thin the anchor set
  const auto pts = ptr->points().distinct_weighted().first;
  const std::size_t stride = std::max<std::size_t>(1, pts.size() / 16);
  for (std::size_t i = 0; i < pts.size(); i += stride) v.breakpoints.push_back(pts[i]);
  const double pad = 8.0 * ptr->bandwidth();
  v.lo = ptr->points().min() - pad;
  v.hi = ptr->points().max() + pad;
  v.mass = 1.0;
  v.exact = false;
  return v;
}

double hellinger_sq(const DensityView& fa, const DensityView& fb) {
  if (std::fabs(fa.mass - 1.0) > 1e-6 || std::fabs(fb.mass - 1.0) > 1e-6)
    throw input_error("hellinger_sq requires normalized densities");

  double affinity = 0.0;
  const double lo = std::max(fa.lo, fb.lo);
  const double hi = std::min(fa.hi, fb.hi);
  if (lo < hi) {
    if (fa.exact && fb.exact) {
      std::vector<double> cells;
      cells.push_back(lo);
      for (const auto* v : {&fa, &fb})
        for (double x : v->breakpoints)
          if (x > lo && x < hi) cells.push_back(x);
      cells.push_back(hi);
      std::sort(cells.begin(), cells.end());
      cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
      for (std::size_t i = 0; i + 1 < cells.size(); ++i) {
        const double l = cells[i], r = cells[i + 1];
        double ma, sa, mb, sb;
        if (!fa.log_cell(l, r, &ma, &sa)) continue;
        if (!fb.log_cell(l, r, &mb, &sb)) continue;
        const double mid = 0.5 * (l + r);
        const double m = 0.5 * (ma + mb);
        const double s = 0.5 * (sa + sb);
        affinity += exp_cell_integral(m + s * (l - mid), m + s * (r - mid), r - l);
      }
    } else {
      std::vector<double> hints = fa.breakpoints;
      hints.insert(hints.end(), fb.breakpoints.begin(), fb.breakpoints.end());
      affinity = integrate(
          [&](double t) {
            const double p = fa.pdf(t), q = fb.pdf(t);
            return p > 0.0 && q > 0.0 ? std::sqrt(p * q) : 0.0;
          },
          lo, hi, 1e-8, hints);
    }
  }
  return std::clamp(1.0 - affinity, 0.0, 1.0);
}

std::string hell_family_name(HellFamily f) {
  switch (f) {
    case HellFamily::kUnimodal: return "unimodal";
    case HellFamily::kLogConcave: return "logconcave";
    case HellFamily::kLogConcaveSmoothed: return "logconcave-smoothed";
    case HellFamily::kKdeNaive: return "kde-naive";
    case HellFamily::kKdeBiasCorrected: return "kde-bias-corrected";
  }
  return "?";
}

HellFamily hell_family_from_name(const std::string& name) {
  if (name == "unimodal") return HellFamily::kUnimodal;
  if (name == "logconcave") return HellFamily::kLogConcave;
  if (name == "logconcave-smoothed") return HellFamily::kLogConcaveSmoothed;
  if (name == "kde-naive") return HellFamily::kKdeNaive;
  if (name == "kde-bias-corrected") return HellFamily::kKdeBiasCorrected;
  throw input_error("unknown hellinger family: " + name);
}

double influence_psi(InfluenceSide which, double x, const DensityView& fa,
                     const DensityView& fb, double h2) {
  const DensityView& own = which == InfluenceSide::kF ? fa : fb;
  const DensityView& other = which == InfluenceSide::kF ? fb : fa;
  if (x < own.lo || x > own.hi) return 0.0;
  const double f = own.pdf(x);
  if (!(f > 0.0)) {
    throw numerical_error("influence function hit zero density inside the declared support");
  }
  const double g = std::max(other.pdf(x), 0.0);
  return 0.5 * (1.0 - std::sqrt(g / f) - h2);
}

double hellinger_sigma2(double h2, double lambda) {
  return (2.0 * h2 - h2 * h2) / (4.0 * lambda * (1.0 - lambda));
}

namespace {

HellingerResult assemble(HellFamily family, double h2_raw, double lambda, std::size_t m,
                         std::size_t n, double ci_level, bool with_ci) {
  HellingerResult r;
  r.family = family;
  r.h2_raw = h2_raw;
  r.h2 = std::clamp(h2_raw, 0.0, 1.0);
  r.lambda_hat = lambda;
  r.n_x = m;
  r.n_y = n;
  r.ci_level = ci_level;
  r.has_ci = with_ci;
  r.sigma2 = hellinger_sigma2(r.h2, lambda);
  if (with_ci) {
    const double N = static_cast<double>(m + n);
    const double z = norm_quantile(0.5 * (1.0 + ci_level));
    const double half = z * std::sqrt(r.sigma2 / N);
    r.ci_h2_raw_lo = r.h2 - half;
    r.ci_h2_raw_hi = r.h2 + half;
    r.ci_h2_lo = std::clamp(r.ci_h2_raw_lo, 0.0, 1.0);
    r.ci_h2_hi = std::clamp(r.ci_h2_raw_hi, 0.0, 1.0);
    r.ci_h_lo = std::sqrt(std::max(r.ci_h2_lo, 0.0));
    r.ci_h_hi = std::sqrt(r.ci_h2_hi);
  }
  return r;
}

}  // namespace

HellingerResult estimate_hellinger(const Sample& x, const Sample& y, HellFamily family,
                                   double ci_level) {
  if (!(ci_level > 0.0 && ci_level < 1.0)) throw input_error("ci level must lie in (0,1)");
  if (family == HellFamily::kKdeBiasCorrected) return kde_bias_corrected(x, y, ci_level);
  const double m = static_cast<double>(x.size());
  const double n = static_cast<double>(y.size());
  const double lambda = m / (m + n);

  double h2 = 0.0;
  switch (family) {
    case HellFamily::kUnimodal: {
      BirgeConfig cfg;
      cfg.eta = 1.0 / (m + n);
      h2 = hellinger_sq(make_view(birge_fit(x, cfg)), make_view(birge_fit(y, cfg)));
      break;
    }
    case HellFamily::kLogConcave:
      h2 = hellinger_sq(make_view(lc_fit(x)), make_view(lc_fit(y)));
      break;
    case HellFamily::kLogConcaveSmoothed:
      h2 = hellinger_sq(make_view(lc_smooth(lc_fit(x), x)), make_view(lc_smooth(lc_fit(y), y)));
      break;
    case HellFamily::kKdeNaive:
      h2 = hellinger_sq(make_view(KdeFit(x, lscv_bandwidth(x))),
                        make_view(KdeFit(y, lscv_bandwidth(y))));
      break;
    case HellFamily::kKdeBiasCorrected:
      break;  // handled above
  }
  const bool with_ci = family != HellFamily::kKdeNaive;
  return assemble(family, h2, lambda, x.size(), y.size(), ci_level, with_ci);
}

HellingerResult kde_bias_corrected(const Sample& x, const Sample& y, double ci_level) {
  if (!(ci_level > 0.0 && ci_level < 1.0)) throw input_error("ci level must lie in (0,1)");
  KdeFit fx(x, lscv_bandwidth(x));
  KdeFit fy(y, lscv_bandwidth(y));
  double sum_x = 0.0;
  for (double xi : x.values()) sum_x += std::sqrt(fy.pdf(xi) / fx.pdf(xi));
  double sum_y = 0.0;
  for (double yj : y.values()) sum_y += std::sqrt(fx.pdf(yj) / fy.pdf(yj));
  const double m = static_cast<double>(x.size());
  const double n = static_cast<double>(y.size());
  const double h2_raw = 1.0 - 0.5 * (sum_x / m + sum_y / n);
  return assemble(HellFamily::kKdeBiasCorrected, h2_raw, m / (m + n), x.size(), y.size(),
                  ci_level, true);
}

}  // namespace shapestat
