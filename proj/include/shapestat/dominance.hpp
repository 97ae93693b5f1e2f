#pragma once

#include <functional>
#include <string>
#include <vector>

#include "shapestat/ecdf.hpp"
#include "shapestat/sample.hpp"

namespace shapestat {

enum class Family { kEmpirical, kUnimodal, kLogConcave, kLogConcaveSmoothed };
enum class StatKind { kMinT, kTsep, kWrs };

std::string family_name(Family f);
std::string stat_name(StatKind s);
Family family_from_name(const std::string& name);
StatKind stat_from_name(const std::string& name);

// A fitted distribution ready for the test statistics.
struct DistributionHandle {
  Family family = Family::kEmpirical;
  std::size_t sample_size = 0;
  std::function<double(double)> cdf;
  std::function<double(double)> pdf;     // unused for the empirical family
  std::vector<double> jump_points;       // data points / density breakpoints
  double support_lo = 0.0;
  double support_hi = 0.0;
};

// eta <= 0 means the Birge default 1/n for this sample; pass 1/(m+n) in
// two-sample settings.
DistributionHandle fit_handle(const Sample& sample, Family family, double eta = 0.0);

// Minimum t-statistic over the trimmed interval. Points where both variance
// terms vanish contribute -inf (numerator < 0), +inf (> 0) or are skipped
// (= 0).
double stat_min_t(const DistributionHandle& f1, const DistributionHandle& f2,
                  const TrimInterval& interval);

// Two-sample empirical process statistic; the infimum over quantile levels is
// evaluated exactly on the pieces where the pooled quantile is constant.
double stat_tsep(const DistributionHandle& f1, const DistributionHandle& f2,
                 const Ecdf& pooled, double p);

// Mann-Whitney form. Empirical pairs use the midrank tie convention; fitted
// families integrate F2 against the density of F1 by adaptive quadrature.
double stat_wrs(const DistributionHandle& f1, const DistributionHandle& f2,
                const Sample& x, const Sample& y);

// Asymptotic variance of the TSEP statistic at a boundary crossing point
// with density values f_at, g_at and sampling fraction lambda.
double sigma_tsep(double f_at, double g_at, double lambda);

struct DominanceTestResult {
  StatKind statistic = StatKind::kMinT;
  Family family = Family::kEmpirical;
  double value = 0.0;  // +-inf allowed
  double critical_value = 0.0;
  double p_value = 0.0;
  bool reject = false;
  TrimInterval interval;
  double c_mn = 0.0;
  double lambda_hat = 0.0;
  bool conservative = false;
  bool asymptotics_unknown = false;
  std::size_t m = 0, n = 0;
};

DominanceTestResult run_dominance_test(const Sample& x, const Sample& y, Family family,
                                       StatKind statistic, double p, double alpha,
                                       bool conservative = false);

// Shared plumbing for callers that fit once and evaluate several statistics.
double compute_statistic(StatKind statistic, const DistributionHandle& fx,
                         const DistributionHandle& fy, const Sample& x, const Sample& y,
                         const Ecdf& pooled, const TrimInterval& interval, double p);

}  // namespace shapestat
