#include "shapestat/unimodal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "shapestat/ecdf.hpp"
#include "shapestat/errors.hpp"
#include "shapestat/parallel.hpp"

namespace shapestat {

double StepDensity::pdf(double x) const {
  if (breakpoints.empty() || x <= breakpoints.front() || x > breakpoints.back()) return 0.0;
  const auto it = std::lower_bound(breakpoints.begin(), breakpoints.end(), x);
  return heights[static_cast<std::size_t>(it - breakpoints.begin()) - 1];
}

double StepDensity::cdf(double x) const {
  if (breakpoints.empty() || x <= breakpoints.front()) return 0.0;
  if (x >= breakpoints.back()) return 1.0;
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    if (x <= breakpoints[i + 1])
      return acc + heights[i] * (x - breakpoints[i]);
    acc += heights[i] * (breakpoints[i + 1] - breakpoints[i]);
  }
  return 1.0;
}

double StepDensity::quantile(double t) const {
  if (!(t > 0.0 && t < 1.0)) throw input_error("step density quantile requires t in (0,1)");
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    const double seg = heights[i] * (breakpoints[i + 1] - breakpoints[i]);
    if (acc + seg >= t) {
      if (heights[i] <= 0.0) return breakpoints[i + 1];
      return breakpoints[i] + (t - acc) / heights[i];
    }
    acc += seg;
  }
  return breakpoints.back();
}

double StepDensity::total_mass() const {
  double acc = 0.0;
  for (std::size_t i = 0; i < heights.size(); ++i)
    acc += heights[i] * (breakpoints[i + 1] - breakpoints[i]);
  return acc;
}

std::vector<double> pava_antitonic(const std::vector<double>& values,
                                   const std::vector<double>& weights) {
  if (values.empty() || values.size() != weights.size())
    throw input_error("pava requires equal nonzero lengths");
  for (double w : weights)
    if (!(w > 0.0)) throw input_error("pava weights must be positive");

  struct Block {
    double mean, weight;
    std::size_t count;
  };
  std::vector<Block> blocks;
  blocks.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    blocks.push_back({values[i], weights[i], 1});
    while (blocks.size() >= 2 && blocks[blocks.size() - 2].mean < blocks.back().mean) {
      const Block top = blocks.back();
      blocks.pop_back();
      Block& prev = blocks.back();
      const double w = prev.weight + top.weight;
      prev.mean = (prev.mean * prev.weight + top.mean * top.weight) / w;
      prev.weight = w;
      prev.count += top.count;
    }
  }
  std::vector<double> fit;
  fit.reserve(values.size());
  for (const Block& b : blocks) fit.insert(fit.end(), b.count, b.mean);
  return fit;
}

namespace {

// Decreasing Grenander over CDF vertices (anchor,0),(u_1,c_1),...,(u_r,1).
// A vertex at the anchor itself is dropped; its mass spreads into the first
// segment.
StepDensity decreasing_from_vertices(double anchor, const std::vector<double>& pts,
                                     const std::vector<double>& cum) {
  std::size_t first = 0;
  while (first < pts.size() && pts[first] <= anchor) ++first;
  if (first == pts.size())
    throw numerical_error("degenerate sample: no spread beyond the anchor");

  std::vector<double> slopes, widths;
  double px = anchor, pc = 0.0;
  for (std::size_t j = first; j < pts.size(); ++j) {
    const double w = pts[j] - px;
    slopes.push_back((cum[j] - pc) / w);
    widths.push_back(w);
    px = pts[j];
    pc = cum[j];
  }
  StepDensity d;
  d.heights = pava_antitonic(slopes, widths);
  d.breakpoints.push_back(anchor);
  for (std::size_t j = first; j < pts.size(); ++j) d.breakpoints.push_back(pts[j]);
  d.mode_location = anchor;
  return d;
}

StepDensity reflect(const StepDensity& d, double about) {
  StepDensity out;
  out.breakpoints.resize(d.breakpoints.size());
  out.heights.resize(d.heights.size());
  for (std::size_t i = 0; i < d.breakpoints.size(); ++i)
    out.breakpoints[d.breakpoints.size() - 1 - i] = about - d.breakpoints[i];
  for (std::size_t i = 0; i < d.heights.size(); ++i)
    out.heights[d.heights.size() - 1 - i] = d.heights[i];
  out.mode_location = about - d.mode_location;
  return out;
}

std::pair<std::vector<double>, std::vector<double>> vertex_list(const Sample& s) {
  auto [pts, cnt] = s.distinct_weighted();
  std::vector<double> cum(cnt.size());
  double acc = 0.0;
  const double n = static_cast<double>(s.size());
  for (std::size_t i = 0; i < cnt.size(); ++i) {
    acc += cnt[i];
    cum[i] = acc / n;
  }
  cum.back() = 1.0;
  return {std::move(pts), std::move(cum)};
}

}  // namespace

StepDensity grenander_monotone(const Sample& sample, MonotoneDirection direction,
                               double anchor) {
  if (!std::isfinite(anchor)) throw input_error("anchor must be finite");
  if (direction == MonotoneDirection::kDecreasing) {
    if (anchor > sample.min()) throw input_error("decreasing fit needs anchor <= min(sample)");
    auto [pts, cum] = vertex_list(sample);
    return decreasing_from_vertices(anchor, pts, cum);
  }
  if (anchor < sample.max()) throw input_error("increasing fit needs anchor >= max(sample)");
  std::vector<double> reflected;
  reflected.reserve(sample.size());
  for (double v : sample.values()) reflected.push_back(anchor - v);
  auto [rpts, rcum] = vertex_list(Sample(std::move(reflected)));
  StepDensity mirrored = decreasing_from_vertices(0.0, rpts, rcum);
  StepDensity out = reflect(mirrored, anchor);
  out.mode_location = anchor;
  return out;
}

StepDensity grenander_mode_known(const Sample& sample, double mode) {
  if (!std::isfinite(mode)) throw input_error("mode must be finite");
  std::vector<double> left, right;
  for (double v : sample.values()) (v <= mode ? left : right).push_back(v);
  // A left part consisting only of mode-valued observations has no spread;
  // fold it into the decreasing side.
  if (!left.empty() && left.front() >= mode) {
    right.insert(right.begin(), left.begin(), left.end());
    std::sort(right.begin(), right.end());
    left.clear();
  }
  const double m = static_cast<double>(sample.size());
  const double alpha = static_cast<double>(left.size()) / m;

  StepDensity out;
  out.mode_location = mode;
  if (!left.empty()) {
    StepDensity up = grenander_monotone(Sample(std::move(left)), MonotoneDirection::kIncreasing,
                                        mode);
    out.breakpoints = up.breakpoints;
    out.heights.resize(up.heights.size());
    for (std::size_t i = 0; i < up.heights.size(); ++i) out.heights[i] = alpha * up.heights[i];
  }
  if (!right.empty()) {
    StepDensity down = grenander_monotone(Sample(std::move(right)),
                                          MonotoneDirection::kDecreasing, mode);
    const double beta = 1.0 - alpha;
    if (out.breakpoints.empty()) {
      out.breakpoints = down.breakpoints;
      out.heights.resize(down.heights.size());
      for (std::size_t i = 0; i < down.heights.size(); ++i)
        out.heights[i] = beta * down.heights[i];
    } else {
      for (std::size_t i = 1; i < down.breakpoints.size(); ++i)
        out.breakpoints.push_back(down.breakpoints[i]);
      for (double h : down.heights) out.heights.push_back(beta * h);
    }
  }
  if (out.heights.empty()) throw numerical_error("degenerate sample: all observations equal");
  return out;
}

double ks_distance(const StepDensity& density, const Sample& sample) {
  Ecdf ecdf(sample);
  const auto& pts = ecdf.support_points();
  const auto& cum = ecdf.cum_probs();
  double best = 0.0;
  for (std::size_t j = 0; j < pts.size(); ++j) {
    const double fhat = density.cdf(pts[j]);
    const double lo = j == 0 ? 0.0 : cum[j - 1];
    best = std::max(best, std::fabs(fhat - cum[j]));
    best = std::max(best, std::fabs(fhat - lo));
  }
  return best;
}

double squared_density_integral(const StepDensity& density) {
  double acc = 0.0;
  for (std::size_t i = 0; i < density.heights.size(); ++i)
    acc += density.heights[i] * density.heights[i] *
           (density.breakpoints[i + 1] - density.breakpoints[i]);
  return acc;
}

StepDensity birge_fit(const Sample& sample, const BirgeConfig& cfg) {
  auto distinct = sample.distinct_weighted().first;
  if (distinct.size() < 2) throw numerical_error("degenerate sample: all observations equal");
  (void)cfg;  // eta is a guarantee parameter; exhaustive search attains the minimum

  std::vector<double> dist(distinct.size());
  parallel_for(distinct.size(), [&](std::size_t j) {
    dist[j] = ks_distance(grenander_mode_known(sample, distinct[j]), sample);
  });
  std::size_t best = 0;
  for (std::size_t j = 1; j < distinct.size(); ++j)
    if (dist[j] < dist[best]) best = j;  // ties keep the smallest mode
  return grenander_mode_known(sample, distinct[best]);
}

}  // namespace shapestat
