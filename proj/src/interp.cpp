#include "rdiag/interp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rdiag {

namespace {

double sign(double v) { return v > 0 ? 1.0 : (v < 0 ? -1.0 : 0.0); }

// One-sided endpoint slope with the usual shape-preserving clamp.
double endpoint_slope(double h0, double h1, double d0, double d1) {
  double s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
  if (sign(s) != sign(d0))
    s = 0.0;
  else if (sign(d0) != sign(d1) && std::abs(s) > 3.0 * std::abs(d0))
    s = 3.0 * d0;
  return s;
}

}  // namespace

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  const std::size_t n = x_.size();
  if (n < 2 || y_.size() != n)
    throw std::invalid_argument("MonotoneCubic: need >= 2 points, equal-length arrays");
  for (std::size_t i = 1; i < n; ++i)
    if (!(x_[i] > x_[i - 1]))
      throw std::invalid_argument("MonotoneCubic: abscissae must be strictly increasing");

  increasing_ = y_.back() >= y_.front();

  std::vector<double> h(n - 1), del(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = x_[i + 1] - x_[i];
    del[i] = (y_[i + 1] - y_[i]) / h[i];
  }

  d_.assign(n, 0.0);
  if (n == 2) {
    d_[0] = d_[1] = del[0];
  } else {
    for (std::size_t i = 1; i + 1 < n; ++i) {
      if (del[i - 1] * del[i] <= 0.0) {
        d_[i] = 0.0;
      } else {
        // Weighted harmonic mean of adjacent secants (Fritsch-Carlson).
        const double w1 = 2.0 * h[i] + h[i - 1];
        const double w2 = h[i] + 2.0 * h[i - 1];
        d_[i] = (w1 + w2) / (w1 / del[i - 1] + w2 / del[i]);
      }
    }
    d_[0] = endpoint_slope(h[0], h[1], del[0], del[1]);
    d_[n - 1] = endpoint_slope(h[n - 2], h[n - 3], del[n - 2], del[n - 3]);
  }
}

std::size_t MonotoneCubic::segment(double q) const {
  // Index i with x_[i] <= q < x_[i+1], clamped to valid segments.
  auto it = std::upper_bound(x_.begin(), x_.end(), q);
  std::size_t i = static_cast<std::size_t>(it - x_.begin());
  if (i == 0) return 0;
  if (i >= x_.size()) return x_.size() - 2;
  return i - 1;
}

double MonotoneCubic::operator()(double q) const {
  if (q <= x_.front()) return y_.front();
  if (q >= x_.back()) return y_.back();
  const std::size_t i = segment(q);
  const double h = x_[i + 1] - x_[i];
  const double t = (q - x_[i]) / h;
  const double t2 = t * t, t3 = t2 * t;
  const double h00 = 2 * t3 - 3 * t2 + 1;
  const double h10 = t3 - 2 * t2 + t;
  const double h01 = -2 * t3 + 3 * t2;
  const double h11 = t3 - t2;
  return h00 * y_[i] + h10 * h * d_[i] + h01 * y_[i + 1] + h11 * h * d_[i + 1];
}

double MonotoneCubic::derivative(double q) const {
  if (q <= x_.front()) return d_.front();
  if (q >= x_.back()) return d_.back();
  const std::size_t i = segment(q);
  const double h = x_[i + 1] - x_[i];
  const double t = (q - x_[i]) / h;
  const double t2 = t * t;
  const double dh00 = (6 * t2 - 6 * t) / h;
  const double dh10 = 3 * t2 - 4 * t + 1;
  const double dh01 = (-6 * t2 + 6 * t) / h;
  const double dh11 = 3 * t2 - 2 * t;
  return dh00 * y_[i] + dh10 * d_[i] + dh01 * y_[i + 1] + dh11 * d_[i + 1];
}

double MonotoneCubic::solve(double target) const {
  const double lo_y = increasing_ ? y_.front() : y_.back();
  const double hi_y = increasing_ ? y_.back() : y_.front();
  if (target <= lo_y) return increasing_ ? x_.front() : x_.back();
  if (target >= hi_y) return increasing_ ? x_.back() : x_.front();
  double a = x_.front(), b = x_.back();
  for (int iter = 0; iter < 120 && b - a > 0; ++iter) {
    const double m = 0.5 * (a + b);
    const double v = (*this)(m);
    const bool go_right = increasing_ ? (v < target) : (v > target);
    if (go_right)
      a = m;
    else
      b = m;
  }
  return 0.5 * (a + b);
}

}  // namespace rdiag
