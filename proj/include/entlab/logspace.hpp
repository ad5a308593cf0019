#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>

namespace entlab {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log(exp(a) + exp(b)) without leaving log scale.
inline double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = std::max(a, b);
  const double lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

inline double log_sum(std::span<const double> terms) {
  double acc = kNegInf;
  for (double t : terms) acc = log_add(acc, t);
  return acc;
}

// Kahan-compensated accumulator for long linear-space sums.
class CompensatedSum {
 public:
  void add(double x) {
    const double y = x - c_;
    const double t = sum_ + y;
    c_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double c_ = 0.0;
};

}  // namespace entlab
