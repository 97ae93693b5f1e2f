#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "shapestat/dominance.hpp"
#include "shapestat/hellinger.hpp"
#include "shapestat/logconcave.hpp"
#include "shapestat/rng.hpp"
#include "shapestat/sample.hpp"

namespace shapestat {

// Fixed default so runs are reproducible without flags.
inline constexpr std::uint64_t kDefaultSeed = 727595810;

enum class Study { kDominance, kHellinger };

struct ScenarioSpec {
  Study study = Study::kDominance;
  char case_id = 'a';
  double gamma = 0.0;  // dominance only
  std::size_t m = 100;
  std::size_t n = 100;
  double p = 0.05;
  double alpha = 0.05;
  std::size_t replicates = 10000;
  std::uint64_t seed = kDefaultSeed;
};

// Draws the paper's simulation pair. Dominance cases a-e; Hellinger cases
// a, b, d, e, f (case c is data-dependent and sampled from fitted densities
// by the experiment driver). Gamma(a,b) is shape/scale, Pareto(a,b) has CDF
// 1-(b/x)^a on x >= b, Exp(t) is rate-parametrized, normals are (mean, sd).
std::pair<Sample, Sample> sample_scenario(Study study, char case_id, double gamma,
                                          std::size_t m, std::size_t n, RngStream& stream);

struct TestConfig {
  StatKind statistic = StatKind::kMinT;
  Family family = Family::kEmpirical;
  bool conservative = false;
};

struct CurvePoint {
  double x = 0.0;  // gamma (power curves) or n (hellinger curves)
  double estimate = 0.0;
  double se = 0.0;
  std::size_t reps = 0;
};

// Rejection frequency per gamma for each test configuration. All
// configurations see the same draws; outputs are byte-identical for any
// worker count.
std::vector<std::vector<CurvePoint>> power_curves(const ScenarioSpec& spec,
                                                  const std::vector<double>& gamma_grid,
                                                  const std::vector<TestConfig>& tests);

// True squared Hellinger distance of a hellinger-study case: closed form for
// cases a, b, d; high-resolution quadrature otherwise. Case c needs the
// fitted pair.
double hellinger_truth(char case_id, const SmoothedLogConcaveFit* case_c_f = nullptr,
                       const SmoothedLogConcaveFit* case_c_g = nullptr);

struct HellingerPoint {
  std::size_t n = 0;
  HellFamily estimator = HellFamily::kLogConcave;
  double truth = 0.0;
  double mean_estimate = 0.0;
  double se_estimate = 0.0;
  double sqrt_n_abs_bias = 0.0;
  double n_mse = 0.0;
  double mae = 0.0;
  double coverage = 0.0;      // NaN when the estimator carries no interval
  double coverage_se = 0.0;   // NaN likewise
  double mean_ci_length = 0.0;
  std::size_t reps = 0;
};

std::vector<HellingerPoint> hellinger_experiment(
    char case_id, const std::vector<std::size_t>& n_grid, std::size_t replicates,
    const std::vector<HellFamily>& estimators, std::uint64_t seed, double ci_level = 0.95,
    const SmoothedLogConcaveFit* case_c_f = nullptr,
    const SmoothedLogConcaveFit* case_c_g = nullptr);

enum class DensityMethod { kBirge, kLogConcave, kLogConcaveSmoothed, kKdeLscv, kKdePlugin };

std::string method_name(DensityMethod m);
DensityMethod method_from_name(const std::string& name);

// A fitted density reduced to what the CV risks need.
struct CvFit {
  std::function<double(double)> pdf;
  double squared_integral = 0.0;
};

struct CvMethod {
  std::string name;
  std::function<CvFit(const Sample&)> fit;  // may throw; failures counted per fold
};

struct RiskRow {
  std::string method;
  double mise_err = 0.0;
  double neg_loglik = 0.0;
  std::size_t folds_used = 0;
  std::size_t failures = 0;
};

std::vector<RiskRow> crossval_risk(const Sample& sample,
                                   const std::vector<DensityMethod>& methods,
                                   std::size_t folds, std::uint64_t seed);
std::vector<RiskRow> crossval_risk_custom(const Sample& sample,
                                          const std::vector<CvMethod>& methods,
                                          std::size_t folds, std::uint64_t seed);

// Power along the mixture path between the pooled smoothed fit and the
// per-sample smoothed fits: per gamma, approximate the smoothed log-concave
// projection of each mixture from `projection_draws` simulated points, then
// test fresh draws of the original sizes.
std::vector<std::vector<CurvePoint>> power_near_data(
    const Sample& x, const Sample& y, const std::vector<double>& gamma_grid,
    std::size_t replicates, const std::vector<TestConfig>& tests, std::uint64_t seed,
    double p = 0.075, double alpha = 0.05, std::size_t projection_draws = 1000);

}  // namespace shapestat
