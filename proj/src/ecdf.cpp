#include "shapestat/ecdf.hpp"

#include <algorithm>

#include "shapestat/errors.hpp"

namespace shapestat {

Ecdf::Ecdf(const Sample& sample) : sample_size_(sample.size()) {
  auto [pts, cnt] = sample.distinct_weighted();
  support_points_ = std::move(pts);
  cum_probs_.resize(support_points_.size());
  double acc = 0.0;
  const double n = static_cast<double>(sample_size_);
  for (std::size_t i = 0; i < cum_probs_.size(); ++i) {
    acc += cnt[i];
    cum_probs_[i] = acc / n;
  }
  cum_probs_.back() = 1.0;
}

double Ecdf::operator()(double x) const {
  auto it = std::upper_bound(support_points_.begin(), support_points_.end(), x);
  if (it == support_points_.begin()) return 0.0;
  return cum_probs_[static_cast<std::size_t>(it - support_points_.begin()) - 1];
}

double Ecdf::quantile(double t) const {
  if (!(t > 0.0 && t < 1.0)) throw input_error("ecdf quantile requires t in (0,1)");
  auto it = std::lower_bound(cum_probs_.begin(), cum_probs_.end(), t);
  return support_points_[static_cast<std::size_t>(it - cum_probs_.begin())];
}

TrimInterval trim_interval(const Ecdf& pooled, double p) {
  if (!(p > 0.0 && p < 0.5)) throw input_error("trim interval requires p in (0, 1/2)");
  TrimInterval d;
  d.p = p;
  d.lower = pooled.quantile(p);
  d.upper = pooled.quantile(1.0 - p);
  d.degenerate = !(d.lower < d.upper);
  return d;
}

}  // namespace shapestat
