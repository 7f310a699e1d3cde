#pragma once

#include <cstddef>
#include <vector>

namespace rdiag {

// Shape-preserving piecewise-cubic interpolant (Fritsch-Carlson slopes).
// Monotone data yields a monotone interpolant, which makes the inverse map
// well defined; evaluation clamps outside the abscissa range.
class MonotoneCubic {
 public:
  MonotoneCubic(std::vector<double> x, std::vector<double> y);

  double operator()(double q) const;
  double derivative(double q) const;

  // Inverse of a monotone interpolant: the q in [x_front, x_back] with
  // value(q) = target, by bisection; clamps when target is out of range.
  double solve(double target) const;

  double x_front() const { return x_.front(); }
  double x_back() const { return x_.back(); }
  double y_front() const { return y_.front(); }
  double y_back() const { return y_.back(); }
  const std::vector<double>& xs() const { return x_; }
  const std::vector<double>& ys() const { return y_; }

 private:
  std::size_t segment(double q) const;

  std::vector<double> x_, y_, d_;
  bool increasing_ = true;
};

}  // namespace rdiag
