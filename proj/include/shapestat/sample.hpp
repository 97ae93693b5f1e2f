#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "shapestat/errors.hpp"

namespace shapestat {

// A sorted batch of finite observations. Values are sorted on construction;
// ties are allowed.
class Sample {
 public:
  Sample() = default;

  explicit Sample(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw input_error("sample must contain at least one value");
    for (double v : values_) {
      if (!std::isfinite(v)) throw input_error("sample contains a non-finite value");
    }
    std::sort(values_.begin(), values_.end());
  }

  std::size_t size() const { return values_.size(); }
  double min() const { return values_.front(); }
  double max() const { return values_.back(); }
  double operator[](std::size_t i) const { return values_[i]; }
  const std::vector<double>& values() const { return values_; }

  double mean() const {
    double s = 0.0;
    for (double v : values_) s += v;
    return s / static_cast<double>(values_.size());
  }

  // Population-form variance (divisor n).
  double variance() const {
    const double mu = mean();
    double s = 0.0;
    for (double v : values_) s += (v - mu) * (v - mu);
    return s / static_cast<double>(values_.size());
  }

  // Distinct values with multiplicities, ascending.
  std::pair<std::vector<double>, std::vector<double>> distinct_weighted() const {
    std::vector<double> pts, cnt;
    for (double v : values_) {
      if (!pts.empty() && v == pts.back()) {
        cnt.back() += 1.0;
      } else {
        pts.push_back(v);
        cnt.push_back(1.0);
      }
    }
    return {std::move(pts), std::move(cnt)};
  }

 private:
  std::vector<double> values_;
};

// Pool of two samples, sorted.
inline Sample pool(const Sample& a, const Sample& b) {
  std::vector<double> v;
  v.reserve(a.size() + b.size());
  v.insert(v.end(), a.values().begin(), a.values().end());
  v.insert(v.end(), b.values().begin(), b.values().end());
  return Sample(std::move(v));
}

}  // namespace shapestat
