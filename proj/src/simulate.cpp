#include "shapestat/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <map>
#include <memory>

#include "shapestat/errors.hpp"
#include "shapestat/kde.hpp"
#include "shapestat/normal.hpp"
#include "shapestat/parallel.hpp"
#include "shapestat/quadrature.hpp"

namespace shapestat {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::uint64_t hash_doubles(std::uint64_t h, std::initializer_list<double> vals) {
  for (double v : vals) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof(bits));
    h = fnv1a(&bits, sizeof(bits), h);
  }
  return h;
}

std::uint64_t scenario_hash(Study study, char case_id, double gamma, std::size_t m,
                            std::size_t n) {
  std::uint64_t h = fnv1a(&case_id, 1);
  const unsigned char s = study == Study::kDominance ? 0 : 1;
  h = fnv1a(&s, 1, h);
  std::uint64_t sizes[2] = {m, n};
  h = fnv1a(sizes, sizeof(sizes), h);
  return hash_doubles(h, {gamma});
}

std::vector<double> draw_normal(RngStream& s, std::size_t k, double mu, double sd) {
  std::vector<double> v(k);
  for (auto& e : v) e = mu + sd * s.normal();
  return v;
}

}  // namespace

std::pair<Sample, Sample> sample_scenario(Study study, char case_id, double gamma,
                                          std::size_t m, std::size_t n, RngStream& stream) {
  std::vector<double> xs(m), ys(n);
  if (study == Study::kDominance) {
    switch (case_id) {
      case 'a':
        xs = draw_normal(stream, m, gamma, 1.0);
        ys = draw_normal(stream, n, 0.0, 1.0);
        break;
      case 'b':
        xs = draw_normal(stream, m, 3.0 * gamma, 1.0);
        ys = draw_normal(stream, n, 0.5, 2.0);
        break;
      case 'c':
        for (auto& e : xs) e = stream.gamma(2.0, 0.1 + 0.4 * gamma);
        for (auto& e : ys) e = stream.gamma(1.0, 0.5);
        break;
      case 'd':
        for (auto& e : xs) e = stream.gamma(2.0, 1.0);
        for (auto& e : ys) e = stream.pareto(0.5 + 2.0 * gamma, 1.0);
        break;
      case 'e':
        xs = draw_normal(stream, m, 0.0, 1.0);
        for (auto& e : ys) {
          const double mu = stream.uniform() < 0.5 ? 2.0 * gamma + 4.0 : 2.0 * gamma - 2.0;
          e = mu + stream.normal();
        }
        break;
      default: throw input_error("dominance case must be one of a-e");
    }
  } else {
    switch (case_id) {
      case 'a':
        for (auto& e : xs) e = stream.gamma(4.0, 1.0);
        for (auto& e : ys) e = stream.gamma(3.0, 1.0);
        break;
      case 'b':
        xs = draw_normal(stream, m, 1.0, 1.0);
        ys = draw_normal(stream, n, 0.0, 1.0);
        break;
      case 'd':
        for (auto& e : xs) e = stream.exponential(1.0);
        for (auto& e : ys) e = stream.exponential(2.0);
        break;
      case 'e':
        xs = draw_normal(stream, m, 0.0, 1.0);
        for (auto& e : ys) {
          const double mu = stream.uniform() < 0.5 ? 6.0 : 0.0;
          e = mu + stream.normal();
        }
        break;
      case 'f':
        xs = draw_normal(stream, m, 0.0, 1.0);
        for (auto& e : ys) e = stream.gamma(3.61, 1.41);
        break;
      case 'c': throw input_error("hellinger case c is sampled from fitted densities");
      default: throw input_error("hellinger case must be one of a-f");
    }
  }
  return {Sample(std::move(xs)), Sample(std::move(ys))};
}

namespace {

double normal_affinity(double mu1, double sd1, double mu2, double sd2) {
  const double v1 = sd1 * sd1, v2 = sd2 * sd2;
  const double d = mu1 - mu2;
  return std::sqrt(2.0 * sd1 * sd2 / (v1 + v2)) * std::exp(-d * d / (4.0 * (v1 + v2)));
}

double gamma_affinity(double a1, double b1, double a2, double b2) {
  const double abar = 0.5 * (a1 + a2);
  const double beta = 2.0 * b1 * b2 / (b1 + b2);
  const double log_aff = std::lgamma(abar) + abar * std::log(beta) -
                         0.5 * (std::lgamma(a1) + std::lgamma(a2) + a1 * std::log(b1) +
                                a2 * std::log(b2));
  return std::exp(log_aff);
}

double gamma_pdf(double x, double shape, double scale) {
  if (x <= 0.0) return 0.0;
  return std::exp((shape - 1.0) * std::log(x) - x / scale - std::lgamma(shape) -
                  shape * std::log(scale));
}

}  // namespace

double hellinger_truth(char case_id, const SmoothedLogConcaveFit* case_c_f,
                       const SmoothedLogConcaveFit* case_c_g) {
  switch (case_id) {
    case 'a': return 1.0 - gamma_affinity(4.0, 1.0, 3.0, 1.0);
    case 'b': return 1.0 - normal_affinity(1.0, 1.0, 0.0, 1.0);
    case 'd': {
      // Exp(r) has scale 1/r; affinity = 2 sqrt(r1 r2) / (r1 + r2).
      return 1.0 - 2.0 * std::sqrt(2.0) / 3.0;
    }
    case 'e': {
      auto f = [](double t) { return norm_pdf(t); };
      auto g = [](double t) { return 0.5 * norm_pdf(t - 6.0) + 0.5 * norm_pdf(t); };
      const double aff = integrate_fixed(
          [&](double t) { return std::sqrt(f(t) * g(t)); }, -12.0, 18.0, 1000000);
      return 1.0 - aff;
    }
    case 'f': {
      const double aff = integrate_fixed(
          [&](double t) { return std::sqrt(norm_pdf(t) * gamma_pdf(t, 3.61, 1.41)); }, 0.0,
          40.0, 1000000);
      return 1.0 - aff;
    }
    case 'c': {
      if (!case_c_f || !case_c_g)
        throw input_error("hellinger case c needs the fitted density pair");
      return hellinger_sq(make_view(*case_c_f), make_view(*case_c_g));
    }
    default: throw input_error("hellinger case must be one of a-f");
  }
}

namespace {

void run_dominance_tests(const Sample& x, const Sample& y, const std::vector<TestConfig>& tests,
                         double p, double z_alpha, unsigned char* rejects) {
  const double m = static_cast<double>(x.size());
  const double n = static_cast<double>(y.size());
  const double N = m + n;
  const double c_mn = std::max(std::sqrt(N / m), std::sqrt(N / n));
  Ecdf pooled(pool(x, y));
  TrimInterval interval = trim_interval(pooled, p);

  std::map<Family, std::pair<DistributionHandle, DistributionHandle>> handles;
  for (const TestConfig& t : tests) {
    if (!handles.count(t.family)) {
      handles.emplace(t.family, std::make_pair(fit_handle(x, t.family, 1.0 / N),
                                               fit_handle(y, t.family, 1.0 / N)));
    }
  }
  for (std::size_t i = 0; i < tests.size(); ++i) {
    const TestConfig& t = tests[i];
    const auto& [fx, fy] = handles.at(t.family);
    const double value = compute_statistic(t.statistic, fx, fy, x, y, pooled, interval, p);
    const double crit =
        (t.conservative && t.statistic == StatKind::kTsep ? c_mn : 1.0) * z_alpha;
    rejects[i] = value > crit ? 1 : 0;
  }
}

}  // namespace

std::vector<std::vector<CurvePoint>> power_curves(const ScenarioSpec& spec,
                                                  const std::vector<double>& gamma_grid,
                                                  const std::vector<TestConfig>& tests) {
  if (spec.replicates == 0) throw input_error("replicates must be >= 1");
  const double z_alpha = norm_quantile(1.0 - spec.alpha);
  std::vector<std::vector<CurvePoint>> curves(tests.size());
  for (auto& c : curves) c.resize(gamma_grid.size());

  for (std::size_t gi = 0; gi < gamma_grid.size(); ++gi) {
    const double gamma = gamma_grid[gi];
    const std::uint64_t key = scenario_hash(spec.study, spec.case_id, gamma, spec.m, spec.n);
    std::vector<unsigned char> rejects(spec.replicates * tests.size(), 0);
    parallel_for(spec.replicates, [&](std::size_t rep) {
      RngStream stream(derive_seed(spec.seed, key, rep));
      auto [x, y] = sample_scenario(spec.study, spec.case_id, gamma, spec.m, spec.n, stream);
      run_dominance_tests(x, y, tests, spec.p, z_alpha, &rejects[rep * tests.size()]);
    });
    for (std::size_t ti = 0; ti < tests.size(); ++ti) {
      std::size_t count = 0;
      for (std::size_t rep = 0; rep < spec.replicates; ++rep)
        count += rejects[rep * tests.size() + ti];
      const double r = static_cast<double>(spec.replicates);
      const double est = static_cast<double>(count) / r;
      curves[ti][gi] = {gamma, est, std::sqrt(est * (1.0 - est) / r), spec.replicates};
    }
  }
  return curves;
}

std::vector<HellingerPoint> hellinger_experiment(
    char case_id, const std::vector<std::size_t>& n_grid, std::size_t replicates,
    const std::vector<HellFamily>& estimators, std::uint64_t seed, double ci_level,
    const SmoothedLogConcaveFit* case_c_f, const SmoothedLogConcaveFit* case_c_g) {
  if (replicates == 0) throw input_error("replicates must be >= 1");
  const double truth = hellinger_truth(case_id, case_c_f, case_c_g);
  const std::size_t ne = estimators.size();
  std::vector<HellingerPoint> out;

  for (std::size_t n : n_grid) {
    std::vector<double> est(replicates * ne), cover(replicates * ne), len(replicates * ne);
    const std::uint64_t key = scenario_hash(Study::kHellinger, case_id, 0.0, n, n);
    parallel_for(replicates, [&](std::size_t rep) {
      RngStream stream(derive_seed(seed, key, rep));
      auto draw = [&]() -> std::pair<Sample, Sample> {
        if (case_id == 'c') {
          std::vector<double> xs = smooth_sample(*case_c_f, n, stream);
          std::vector<double> ys = smooth_sample(*case_c_g, n, stream);
          return {Sample(std::move(xs)), Sample(std::move(ys))};
        }
        return sample_scenario(Study::kHellinger, case_id, 0.0, n, n, stream);
      };
      const auto [x, y] = draw();
      for (std::size_t ei = 0; ei < ne; ++ei) {
        const HellingerResult r = estimate_hellinger(x, y, estimators[ei], ci_level);
        const std::size_t at = rep * ne + ei;
        est[at] = r.h2;
        cover[at] = r.has_ci ? (r.ci_h2_lo <= truth && truth <= r.ci_h2_hi ? 1.0 : 0.0) : kNaN;
        len[at] = r.has_ci ? r.ci_h2_hi - r.ci_h2_lo : kNaN;
      }
    });

    for (std::size_t ei = 0; ei < ne; ++ei) {
      std::vector<double> e(replicates), sq(replicates), ab(replicates), cv(replicates),
          ln(replicates);
      for (std::size_t rep = 0; rep < replicates; ++rep) {
        e[rep] = est[rep * ne + ei];
        sq[rep] = (e[rep] - truth) * (e[rep] - truth);
        ab[rep] = std::fabs(e[rep] - truth);
        cv[rep] = cover[rep * ne + ei];
        ln[rep] = len[rep * ne + ei];
      }
      const double r = static_cast<double>(replicates);
      const double mean_est = kahan_sum(e.data(), replicates) / r;
      const double mse = kahan_sum(sq.data(), replicates) / r;
      double var = 0.0;
      for (double v : e) var += (v - mean_est) * (v - mean_est);
      var /= r;
      HellingerPoint pt;
      pt.n = n;
      pt.estimator = estimators[ei];
      pt.truth = truth;
      pt.mean_estimate = mean_est;
      pt.se_estimate = std::sqrt(var / r);
      pt.sqrt_n_abs_bias = std::sqrt(static_cast<double>(n)) * std::fabs(mean_est - truth);
      pt.n_mse = static_cast<double>(n) * mse;
      pt.mae = kahan_sum(ab.data(), replicates) / r;
      if (std::isnan(cv[0])) {
        pt.coverage = kNaN;
        pt.coverage_se = kNaN;
        pt.mean_ci_length = kNaN;
      } else {
        const double cov = kahan_sum(cv.data(), replicates) / r;
        pt.coverage = cov;
        pt.coverage_se = std::sqrt(cov * (1.0 - cov) / r);
        pt.mean_ci_length = kahan_sum(ln.data(), replicates) / r;
      }
      pt.reps = replicates;
      out.push_back(pt);
    }
  }
  return out;
}

std::string method_name(DensityMethod m) {
  switch (m) {
    case DensityMethod::kBirge: return "unimodal";
    case DensityMethod::kLogConcave: return "logconcave";
    case DensityMethod::kLogConcaveSmoothed: return "logconcave-smoothed";
    case DensityMethod::kKdeLscv: return "kde-lscv";
    case DensityMethod::kKdePlugin: return "kde-plugin";
  }
  return "?";
}

DensityMethod method_from_name(const std::string& name) {
  if (name == "unimodal" || name == "birge") return DensityMethod::kBirge;
  if (name == "logconcave") return DensityMethod::kLogConcave;
  if (name == "logconcave-smoothed") return DensityMethod::kLogConcaveSmoothed;
  if (name == "kde-lscv") return DensityMethod::kKdeLscv;
  if (name == "kde-plugin") return DensityMethod::kKdePlugin;
  throw input_error("unknown density method: " + name);
}

namespace {

CvMethod standard_method(DensityMethod m) {
  CvMethod out;
  out.name = method_name(m);
  switch (m) {
    case DensityMethod::kBirge:
      out.fit = [](const Sample& s) {
        auto fit = std::make_shared<StepDensity>(birge_fit(s));
        return CvFit{[fit](double t) { return fit->pdf(t); }, squared_density_integral(*fit)};
      };
      break;
    case DensityMethod::kLogConcave:
      out.fit = [](const Sample& s) {
        auto fit = std::make_shared<LogConcaveFit>(lc_fit(s));
        return CvFit{[fit](double t) { return fit->pdf(t); }, squared_density_integral(*fit)};
      };
      break;
    case DensityMethod::kLogConcaveSmoothed:
      out.fit = [](const Sample& s) {
        auto fit = std::make_shared<SmoothedLogConcaveFit>(lc_smooth(lc_fit(s), s));
        const double pad = 8.0 * std::sqrt(fit->gamma_sq());
        const double sq = integrate(
            [fit](double t) {
              const double v = fit->pdf(t);
              return v * v;
            },
            fit->base().support_lo() - pad, fit->base().support_hi() + pad, 1e-8,
            fit->base().knots());
        return CvFit{[fit](double t) { return fit->pdf(t); }, sq};
      };
      break;
    case DensityMethod::kKdeLscv:
      out.fit = [](const Sample& s) {
        auto fit = std::make_shared<KdeFit>(s, lscv_bandwidth(s));
        return CvFit{[fit](double t) { return fit->pdf(t); }, squared_density_integral(*fit)};
      };
      break;
    case DensityMethod::kKdePlugin:
      out.fit = [](const Sample& s) {
        auto fit = std::make_shared<KdeFit>(s, plugin_bandwidth(s));
        return CvFit{[fit](double t) { return fit->pdf(t); }, squared_density_integral(*fit)};
      };
      break;
  }
  return out;
}

}  // namespace

std::vector<RiskRow> crossval_risk(const Sample& sample,
                                   const std::vector<DensityMethod>& methods,
                                   std::size_t folds, std::uint64_t seed) {
  std::vector<CvMethod> ms;
  ms.reserve(methods.size());
  for (DensityMethod m : methods) ms.push_back(standard_method(m));
  return crossval_risk_custom(sample, ms, folds, seed);
}

std::vector<RiskRow> crossval_risk_custom(const Sample& sample,
                                          const std::vector<CvMethod>& methods,
                                          std::size_t folds, std::uint64_t seed) {
  if (folds < 2) throw input_error("cross-validation needs folds >= 2");
  if (sample.size() < folds) throw input_error("cross-validation needs size >= folds");

  // Deterministic fold assignment: shuffle, then deal round-robin.
  std::vector<std::size_t> order(sample.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  RngStream stream(derive_seed(seed, 0xF01D5u, 0));
  for (std::size_t i = order.size(); i-- > 1;) {
    const std::size_t j = stream.next_u64() % (i + 1);
    std::swap(order[i], order[j]);
  }
  std::vector<std::size_t> fold_of(sample.size());
  for (std::size_t i = 0; i < order.size(); ++i) fold_of[order[i]] = i % folds;

  std::vector<RiskRow> rows(methods.size());
  std::vector<std::vector<double>> mise(methods.size()), nll(methods.size());
  for (std::size_t k = 0; k < folds; ++k) {
    std::vector<double> train, test;
    for (std::size_t i = 0; i < sample.size(); ++i)
      (fold_of[i] == k ? test : train).push_back(sample[i]);
    if (train.size() < 2 || test.empty()) continue;
    Sample train_sample(std::move(train));
    for (std::size_t mi = 0; mi < methods.size(); ++mi) {
      try {
        const CvFit fit = methods[mi].fit(train_sample);
        double sum_pdf = 0.0, sum_nll = 0.0;
        for (double t : test) {
          const double v = fit.pdf(t);
          sum_pdf += v;
          sum_nll += -std::log(std::max(v, 1e-12));
        }
        const double nt = static_cast<double>(test.size());
        mise[mi].push_back(fit.squared_integral - 2.0 * sum_pdf / nt);
        nll[mi].push_back(sum_nll / nt);
      } catch (const std::exception&) {
        rows[mi].failures += 1;
      }
    }
  }
  for (std::size_t mi = 0; mi < methods.size(); ++mi) {
    rows[mi].method = methods[mi].name;
    rows[mi].folds_used = mise[mi].size();
    if (!mise[mi].empty()) {
      rows[mi].mise_err =
          kahan_sum(mise[mi].data(), mise[mi].size()) / static_cast<double>(mise[mi].size());
      rows[mi].neg_loglik =
          kahan_sum(nll[mi].data(), nll[mi].size()) / static_cast<double>(nll[mi].size());
    } else {
      rows[mi].mise_err = kNaN;
      rows[mi].neg_loglik = kNaN;
    }
  }
  return rows;
}

std::vector<std::vector<CurvePoint>> power_near_data(
    const Sample& x, const Sample& y, const std::vector<double>& gamma_grid,
    std::size_t replicates, const std::vector<TestConfig>& tests, std::uint64_t seed,
    double p, double alpha, std::size_t projection_draws) {
  if (replicates == 0) throw input_error("replicates must be >= 1");
  const SmoothedLogConcaveFit fit_x = lc_smooth(lc_fit(x), x);
  const SmoothedLogConcaveFit fit_y = lc_smooth(lc_fit(y), y);
  const Sample pooled = pool(x, y);
  const SmoothedLogConcaveFit fit_pool = lc_smooth(lc_fit(pooled), pooled);
  const double z_alpha = norm_quantile(1.0 - alpha);

  std::vector<std::vector<CurvePoint>> curves(tests.size());
  for (auto& c : curves) c.resize(gamma_grid.size());

  for (std::size_t gi = 0; gi < gamma_grid.size(); ++gi) {
    const double gamma = gamma_grid[gi];
    const std::uint64_t key = hash_doubles(fnv1a("pnd", 3), {gamma});

    // Approximate smoothed log-concave projection of each mixture.
    auto project = [&](const SmoothedLogConcaveFit& own, std::uint64_t salt) {
      RngStream s(derive_seed(seed, key ^ salt, 0));
      std::vector<double> draws(projection_draws);
      for (auto& d : draws) {
        const SmoothedLogConcaveFit& comp = s.uniform() < gamma ? own : fit_pool;
        d = comp.base().quantile(s.uniform()) + std::sqrt(comp.gamma_sq()) * s.normal();
      }
      Sample ds(std::move(draws));
      return lc_smooth(lc_fit(ds), ds);
    };
    const SmoothedLogConcaveFit proj_x = project(fit_x, 0x11);
    const SmoothedLogConcaveFit proj_y = project(fit_y, 0x22);

    std::vector<unsigned char> rejects(replicates * tests.size(), 0);
    parallel_for(replicates, [&](std::size_t rep) {
      RngStream stream(derive_seed(seed, key, rep + 1));
      Sample xs(smooth_sample(proj_x, x.size(), stream));
      Sample ys(smooth_sample(proj_y, y.size(), stream));
      run_dominance_tests(xs, ys, tests, p, z_alpha, &rejects[rep * tests.size()]);
    });
    for (std::size_t ti = 0; ti < tests.size(); ++ti) {
      std::size_t count = 0;
      for (std::size_t rep = 0; rep < replicates; ++rep)
        count += rejects[rep * tests.size() + ti];
      const double r = static_cast<double>(replicates);
      const double est = static_cast<double>(count) / r;
      curves[ti][gi] = {gamma, est, std::sqrt(est * (1.0 - est) / r), replicates};
    }
  }
  return curves;
}

}  // namespace shapestat
