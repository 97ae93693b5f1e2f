#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "shapestat/ecdf.hpp"
#include "shapestat/errors.hpp"
#include "shapestat/unimodal.hpp"

using namespace shapestat;

namespace {

// Exhaustive oracle for the weighted antitonic least-squares fit: enumerate
// every block partition, keep the feasible fits, take the best objective.
std::vector<double> pava_oracle(const std::vector<double>& v, const std::vector<double>& w) {
  const std::size_t n = v.size();
  std::vector<double> best;
  double best_obj = 0.0;
  for (unsigned mask = 0; mask < (1u << (n - 1)); ++mask) {
    std::vector<double> fit(n);
    std::size_t start = 0;
    bool feasible = true;
    double prev_mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const bool boundary = i + 1 == n || (mask >> i) & 1u;
      if (!boundary) continue;
      double sw = 0.0, swv = 0.0;
      for (std::size_t j = start; j <= i; ++j) {
        sw += w[j];
        swv += w[j] * v[j];
      }
      const double mean = swv / sw;
      if (start > 0 && mean > prev_mean + 1e-12) feasible = false;
      for (std::size_t j = start; j <= i; ++j) fit[j] = mean;
      prev_mean = mean;
      start = i + 1;
    }
    if (!feasible) continue;
    double obj = 0.0;
    for (std::size_t i = 0; i < n; ++i) obj += w[i] * (v[i] - fit[i]) * (v[i] - fit[i]);
    if (best.empty() || obj < best_obj) {
      best = fit;
      best_obj = obj;
    }
  }
  return best;
}

// Least concave majorant of the ECDF vertices by direct upper-hull
// construction; returns the slopes between consecutive hull points.
StepDensity grenander_oracle(const Sample& s, double anchor) {
  auto pts = s.distinct_weighted();
  std::vector<std::pair<double, double>> v;
  v.emplace_back(anchor, 0.0);
  double acc = 0.0;
  for (std::size_t i = 0; i < pts.first.size(); ++i) {
    acc += pts.second[i];
    v.emplace_back(pts.first[i], acc / static_cast<double>(s.size()));
  }
  // upper convex hull scan
  std::vector<std::pair<double, double>> hull;
  for (const auto& p : v) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull[hull.size() - 1];
      const double cross =
          (b.first - a.first) * (p.second - a.second) - (p.first - a.first) * (b.second - a.second);
      if (cross >= 0.0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(p);
  }
  StepDensity d;
  for (const auto& p : hull) d.breakpoints.push_back(p.first);
  for (std::size_t i = 0; i + 1 < hull.size(); ++i)
    d.heights.push_back((hull[i + 1].second - hull[i].second) /
                        (hull[i + 1].first - hull[i].first));
  d.mode_location = anchor;
  return d;
}

double oracle_pdf(const StepDensity& d, double x) { return d.pdf(x); }

}  // namespace

TEST_CASE("pava frozen examples against the oracle") {
  const std::vector<double> w{1.0, 1.0, 1.0};
  CHECK(pava_antitonic({1, 3, 2}, w) == std::vector<double>{2, 2, 2});
  CHECK(pava_antitonic({3, 2, 1}, w) == std::vector<double>{3, 2, 1});
  const auto fit = pava_antitonic({3, 1, 2}, w);
  CHECK(fit[0] == doctest::Approx(3.0));
  CHECK(fit[1] == doctest::Approx(1.5));
  CHECK(fit[2] == doctest::Approx(1.5));
  CHECK(pava_oracle({1, 3, 2}, w) == std::vector<double>{2, 2, 2});
}

TEST_CASE("pava matches the exhaustive oracle on random inputs") {
  std::mt19937_64 gen(101);
  std::uniform_real_distribution<double> val(-2.0, 2.0), wt(0.1, 3.0);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 2 + gen() % 9;
    std::vector<double> v(n), w(n);
    for (auto& e : v) e = val(gen);
    for (auto& e : w) e = wt(gen);
    const auto fit = pava_antitonic(v, w);
    const auto want = pava_oracle(v, w);
    for (std::size_t i = 0; i < n; ++i) CHECK(fit[i] == doctest::Approx(want[i]).epsilon(1e-10));
    // idempotence and monotonicity
    const auto refit = pava_antitonic(fit, w);
    for (std::size_t i = 0; i < n; ++i) CHECK(refit[i] == doctest::Approx(fit[i]).epsilon(1e-12));
    for (std::size_t i = 0; i + 1 < n; ++i) CHECK(fit[i] >= fit[i + 1] - 1e-12);
    // block means preserved: total weighted mean unchanged
    double m0 = 0.0, m1 = 0.0, wsum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      m0 += w[i] * v[i];
      m1 += w[i] * fit[i];
      wsum += w[i];
    }
    CHECK(m0 / wsum == doctest::Approx(m1 / wsum).epsilon(1e-12));
  }
  CHECK_THROWS_AS(pava_antitonic({1.0}, {0.0}), input_error);
}

TEST_CASE("grenander decreasing frozen example") {
  StepDensity d = grenander_monotone(Sample({1.0, 2.0, 4.0}), MonotoneDirection::kDecreasing, 0.0);
  REQUIRE(d.breakpoints.size() >= 2);
  CHECK(d.pdf(1.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(d.pdf(2.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(d.pdf(3.0) == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
  CHECK(d.total_mass() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("grenander single point") {
  const double c = 3.25;
  StepDensity d = grenander_monotone(Sample({c}), MonotoneDirection::kDecreasing, c - 1.0);
  CHECK(d.pdf(c) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(d.total_mass() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("grenander slopes match the hull oracle") {
  std::mt19937_64 gen(202);
  std::uniform_real_distribution<double> val(0.0, 4.0);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 1 + gen() % 200;
    std::vector<double> v(n);
    for (auto& e : v) e = val(gen);
    Sample s(v);
    const double anchor = s.min() - 0.25;
    StepDensity fit = grenander_monotone(s, MonotoneDirection::kDecreasing, anchor);
    StepDensity want = grenander_oracle(s, anchor);
    for (double x : s.values()) {
      CHECK(std::fabs(fit.pdf(x) - oracle_pdf(want, x)) < 1e-12);
    }
    CHECK(fit.total_mass() == doctest::Approx(1.0).epsilon(1e-10));
    // heights nonincreasing
    for (std::size_t i = 0; i + 1 < fit.heights.size(); ++i)
      CHECK(fit.heights[i] >= fit.heights[i + 1] - 1e-12);
  }
}

TEST_CASE("grenander increasing mirrors decreasing") {
  std::mt19937_64 gen(303);
  std::uniform_real_distribution<double> val(0.0, 4.0);
  std::vector<double> v(50);
  for (auto& e : v) e = val(gen);
  Sample s(v);
  const double anchor = s.max() + 0.5;
  StepDensity inc = grenander_monotone(s, MonotoneDirection::kIncreasing, anchor);
  std::vector<double> reflected;
  for (double e : v) reflected.push_back(anchor - e);
  Sample rs(reflected);
  StepDensity dec = grenander_monotone(rs, MonotoneDirection::kDecreasing, 0.0);
  CHECK(inc.total_mass() == doctest::Approx(1.0).epsilon(1e-10));
  for (std::size_t i = 0; i < inc.heights.size(); ++i) {
    const double mid = 0.5 * (inc.breakpoints[i] + inc.breakpoints[i + 1]);
    CHECK(inc.pdf(mid) == doctest::Approx(dec.pdf(anchor - mid)).epsilon(1e-9));
  }
  CHECK_THROWS_AS(grenander_monotone(s, MonotoneDirection::kIncreasing, s.max() - 1.0),
                  input_error);
  CHECK_THROWS_AS(grenander_monotone(s, MonotoneDirection::kDecreasing, s.min() + 1.0),
                  input_error);
}

TEST_CASE("mode-known mixture frozen example") {
  StepDensity d = grenander_mode_known(Sample({-1.0, 1.0}), 0.0);
  CHECK(d.pdf(-0.5) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(d.pdf(0.5) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(d.total_mass() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("mode at or below the minimum degenerates to a decreasing fit") {
  Sample s({1.0, 2.0, 4.0});
  for (double mode : {1.0, 0.5}) {
    StepDensity d = grenander_mode_known(s, mode);
    StepDensity dec = grenander_monotone(s, MonotoneDirection::kDecreasing, mode);
    REQUIRE(d.breakpoints.size() == dec.breakpoints.size());
    for (std::size_t i = 0; i < d.heights.size(); ++i)
      CHECK(d.heights[i] == doctest::Approx(dec.heights[i]).epsilon(1e-12));
  }
}

TEST_CASE("mode-known fit is unimodal with the given mode") {
  std::mt19937_64 gen(404);
  std::normal_distribution<double> val(0.0, 1.5);
  for (int rep = 0; rep < 60; ++rep) {
    std::vector<double> v(5 + gen() % 60);
    for (auto& e : v) e = val(gen);
    Sample s(v);
    const double mode = v[gen() % v.size()] + (gen() % 2 ? 0.0 : 0.3);
    StepDensity d = grenander_mode_known(s, mode);
    CHECK(d.total_mass() == doctest::Approx(1.0).epsilon(1e-10));
    // nondecreasing within the left piece, nonincreasing within the right;
    // the junction pair carries no ordering constraint
    for (std::size_t i = 0; i + 1 < d.heights.size(); ++i) {
      if (d.breakpoints[i + 2] <= d.mode_location) {
        CHECK(d.heights[i] <= d.heights[i + 1] + 1e-12);
      } else if (d.breakpoints[i] >= d.mode_location) {
        CHECK(d.heights[i] >= d.heights[i + 1] - 1e-12);
      }
    }
  }
}

TEST_CASE("mode-known cdf stays near the ecdf") {
  std::mt19937_64 gen(505);
  std::normal_distribution<double> val(0.0, 1.0);
  std::vector<double> v(80);
  for (auto& e : v) e = val(gen);
  Sample s(v);
  Ecdf ecdf(s);
  const double mode = 0.1;
  StepDensity d = grenander_mode_known(s, mode);

  std::vector<double> left, right;
  for (double e : v) (e <= mode ? left : right).push_back(e);
  const double alpha = static_cast<double>(left.size()) / 80.0;
  // per-side oracle deviations
  StepDensity right_fit = grenander_oracle(Sample(right), mode);
  Ecdf right_ecdf{Sample(right)};
  double side_dev = 0.0;
  for (double e : right) {
    double cdf = 0.0;
    for (std::size_t i = 0; i + 1 < right_fit.breakpoints.size(); ++i) {
      const double lo = right_fit.breakpoints[i], hi = right_fit.breakpoints[i + 1];
      cdf += right_fit.heights[i] * (std::clamp(e, lo, hi) - lo);
    }
    side_dev = std::max(side_dev, std::fabs(cdf - right_ecdf(e)));
  }
  for (double e : right) {
    CHECK(std::fabs(d.cdf(e) - ecdf(e)) <= (1.0 - alpha) * side_dev + alpha + 1e-9);
  }
}

TEST_CASE("birge frozen examples") {
  StepDensity d = birge_fit(Sample({-1.0, 1.0}), BirgeConfig{0.5});
  CHECK(d.pdf(0.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(d.total_mass() == doctest::Approx(1.0).epsilon(1e-12));

  // A decreasing-looking sample selects a mode at or below the minimum.
  Sample s({0.1, 0.2, 0.4, 0.9});
  StepDensity b = birge_fit(s);
  if (b.mode_location <= s.min()) {
    StepDensity dec = grenander_monotone(s, MonotoneDirection::kDecreasing, b.mode_location);
    REQUIRE(b.heights.size() == dec.heights.size());
    for (std::size_t i = 0; i < b.heights.size(); ++i)
      CHECK(b.heights[i] == doctest::Approx(dec.heights[i]).epsilon(1e-12));
  }
}

TEST_CASE("birge meets the eta guarantee with zero gap") {
  std::mt19937_64 gen(606);
  std::normal_distribution<double> val(0.0, 1.0);
  for (int rep = 0; rep < 100; ++rep) {
    std::vector<double> v(5 + gen() % 120);
    for (auto& e : v) e = val(gen);
    Sample s(v);
    StepDensity fit = birge_fit(s);
    const double got = ks_distance(fit, s);
    double best = 1e9;
    for (double mode : s.distinct_weighted().first)
      best = std::min(best, ks_distance(grenander_mode_known(s, mode), s));
    const double eta = 1.0 / static_cast<double>(s.size());
    CHECK(got <= best + 1e-12);  // exhaustive search attains the minimum
    CHECK(got <= best + eta);
  }
}

TEST_CASE("birge cdf sits below the ecdf left of the mode and above it right") {
  std::mt19937_64 gen(707);
  std::normal_distribution<double> val(0.0, 1.0);
  for (int rep = 0; rep < 40; ++rep) {
    std::vector<double> v(10 + gen() % 80);
    for (auto& e : v) e = val(gen);
    Sample s(v);
    Ecdf ecdf(s);
    StepDensity fit = birge_fit(s);
    for (double e : s.values()) {
      if (e <= fit.mode_location) {
        CHECK(fit.cdf(e) <= ecdf(e) + 1e-9);
      } else {
        CHECK(fit.cdf(e) >= ecdf(e) - 1e-9);
      }
    }
  }
}

TEST_CASE("degenerate samples are rejected") {
  CHECK_THROWS_AS(birge_fit(Sample({2.0, 2.0, 2.0})), numerical_error);
  CHECK_THROWS_AS(grenander_mode_known(Sample({2.0, 2.0}), 2.0), numerical_error);
}

TEST_CASE("step density quantile inverts the cdf") {
  StepDensity d = birge_fit(Sample({0.1, 0.4, 0.5, 0.55, 0.6, 0.9, 1.4}));
  for (double t : {0.05, 0.2, 0.5, 0.8, 0.99}) {
    const double q = d.quantile(t);
    CHECK(d.cdf(q) == doctest::Approx(t).epsilon(1e-9));
  }
}
