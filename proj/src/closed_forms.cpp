#include "rdiag/closed_forms.hpp"

#include <cmath>
#include <numbers>

#include "rdiag/errors.hpp"

namespace rdiag::closed_forms {

namespace {
constexpr double kPi = std::numbers::pi;

void require_order(int n) {
  if (n < 1) throw DomainError("power order n must be a positive integer");
}
}  // namespace

double abs_z_density(double t) {
  return (2.0 / kPi) / (1.0 + t * t);
}

double abs_zn_density(double t, int n) {
  require_order(n);
  if (!(t > 0.0)) throw DomainError("abs_zn_density requires t > 0");
  const double theta = kPi / (n + 1);
  const double beta = 2.0 / (n + 1);
  const double v = std::pow(t, beta);
  // t (v + 2 cos(theta) + 1/v) = t v^{-1} (v^2 + 2 cos(theta) v + 1); the
  // quadratic form keeps the expression finite for both tiny and huge t.
  const double quad = v * v + 2.0 * std::cos(theta) * v + 1.0;
  return (2.0 / kPi) * std::sin(theta) * v / (t * quad);
}

double abs_zn_cdf(double t, int n) {
  require_order(n);
  if (t < 0.0) throw DomainError("abs_zn_cdf requires t >= 0");
  if (t == 0.0) return 0.0;
  const double theta = kPi / (n + 1);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const double v = std::pow(t, 2.0 / (n + 1));
  return ((n + 1) / kPi) * (std::atan((v + c) / s) - std::atan(c / s));
}

double abs_zn_quantile(double q, int n) {
  require_order(n);
  if (!(q >= 0.0 && q < 1.0)) throw DomainError("abs_zn_quantile requires q in [0,1)");
  if (q == 0.0) return 0.0;
  const double theta = kPi / (n + 1);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const double angle0 = std::atan(c / s);  // = pi/2 - theta
  const double v = s * std::tan(kPi * q / (n + 1) + angle0) - c;
  return std::pow(v, (n + 1) / 2.0);
}

double brown_zn_density(std::complex<double> s, int n) {
  require_order(n);
  const double r = std::abs(s);
  if (n == 1) {
    const double d = 1.0 + r * r;
    return 1.0 / (kPi * d * d);
  }
  // One power, not rp / r^2: at r = 0 the quotient is 0/0 while the density
  // genuinely diverges, and pow(0, 2/n - 2) correctly yields +inf.
  const double rp = std::pow(r, 2.0 / n);        // |s|^{2/n}
  const double lead = std::pow(r, 2.0 / n - 2.0);
  const double d = 1.0 + rp;
  return lead / (n * kPi * d * d);
}

double brown_zn_radial_cdf(double r, int n) {
  require_order(n);
  if (r < 0.0) throw DomainError("brown_zn_radial_cdf requires r >= 0");
  const double rp = std::pow(r, 2.0 / n);
  if (std::isinf(rp)) return 1.0;
  return rp / (1.0 + rp);
}

double lp_norm_zn(int n, double p) {
  require_order(n);
  if (!(p > 0.0 && p < 2.0 / (n + 1)))
    throw DomainError("lp_norm_zn requires 0 < p < 2/(n+1)");
  const double pth_power =
      (n + 1) * std::sin(kPi * p / 2.0) / std::sin((n + 1) * kPi * p / 2.0);
  return std::pow(pth_power, 1.0 / p);
}

double h_n(double s, int n) {
  require_order(n);
  if (!(s > 0.0)) throw DomainError("h_n requires s > 0");
  const double expo = (n - 1.0) / (n + 1.0);
  return 1.0 / (s + std::pow(s, expo));
}

std::complex<double> g_abs_zn_sq(std::complex<double> lambda, int n) {
  require_order(n);
  if (lambda.imag() == 0.0 && lambda.real() >= 0.0)
    throw DomainError("g_abs_zn_sq requires lambda off the half-line [0, inf)");
  // Principal branch: the logarithm's cut on the negative reals corresponds
  // exactly to lambda on [0, inf), which the precondition excludes.
  const std::complex<double> root =
      std::exp(-std::log(-lambda) / static_cast<double>(n + 1));
  return 1.0 / (lambda * (1.0 + root));
}

double beta_integral(double beta) {
  if (!(beta > 0.0 && beta < 1.0)) throw DomainError("beta_integral requires beta in (0,1)");
  return kPi / std::sin(beta * kPi);
}

}  // namespace rdiag::closed_forms
