#include "rdiag/transforms.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "rdiag/closed_forms.hpp"
#include "rdiag/errors.hpp"
#include "rdiag/quadrature.hpp"

namespace rdiag {

namespace {

constexpr double kPi = std::numbers::pi;

// ut/(1 - ut) for ut <= 0, safe across the whole range: the direct ratio is
// exact for small |ut| (no cancellation) while the shifted reciprocal form
// avoids -inf/inf when the product overflows.
double psi_ratio(double ut) {
  if (ut >= -1.0) return ut / (1.0 - ut);
  return -1.0 + 1.0 / (1.0 - ut);
}

// Squared-family order when the measure is one of the closed-form squared
// laws |z^n|^2 (with |z|^2 the n = 1 case); 0 otherwise.
int squared_family_order(const NamedDensity& d) {
  if (d.family == Family::abs_z_sq) return 1;
  if (d.family == Family::abs_zn_sq) return d.n;
  return 0;
}

double psi_named(const NamedDensity& d, double u) {
  if (const int order = squared_family_order(d)) {
    // psi(u) = -a/(1+a) with a = (-u)^{1/(n+1)}: the real-axis restriction of
    // lambda G(lambda) - 1 at lambda = 1/u for the closed-form Cauchy
    // transform of |z^n|^2.
    const double a = std::pow(-u, 1.0 / (order + 1));
    return -a / (1.0 + a);
  }
  if (d.family == Family::abs_x_sq) {
    // Root of the quadratic u w^2 + (2u-1) w + u = 0 branch with w -> 0 as
    // u -> 0-, written without cancellation.
    return 2.0 * u / ((1.0 - 2.0 * u) + std::sqrt(1.0 - 4.0 * u));
  }
  // Heavy-tailed |z^n|: integrate in the quantile variable, where the
  // integrand u q / (1 - u q) is bounded in (-1, 0).
  auto f = [&](double q) {
    const double t = d.quantile(q);
    return psi_ratio(u * t);
  };
  return quad::integrate_checked(f, 0.0, 1.0).value;
}

double psi_derivative_named(const NamedDensity& d, double u) {
  if (const int order = squared_family_order(d)) {
    const double a = std::pow(-u, 1.0 / (order + 1));
    const double onepa = 1.0 + a;
    return -a / (u * (order + 1) * onepa * onepa);
  }
  if (d.family == Family::abs_x_sq) {
    const double root = std::sqrt(1.0 - 4.0 * u);
    const double den = (1.0 - 2.0 * u) + root;
    const double dden = -2.0 - 2.0 / root;
    return (2.0 * den - 2.0 * u * dden) / (den * den);
  }
  auto f = [&](double q) {
    const double t = d.quantile(q);
    const double g = 1.0 - u * t;
    return t / (g * g);
  };
  return quad::integrate_checked(f, 0.0, 1.0).value;
}

}  // namespace

double psi(const Measure& mu, double u) {
  if (!(u < 0.0)) throw DomainError("psi requires u < 0");
  if (const auto* am = std::get_if<AtomicMeasure>(&mu)) {
    // sum of w * u t / (1 - u t): the same series as sum w/(1-ut) - 1 but
    // without the cancellation near u -> 0-.
    double acc = 0.0;
    for (std::size_t i = 0; i < am->size(); ++i)
      acc += am->weights()[i] * psi_ratio(u * am->nodes()[i]);
    return acc;
  }
  return psi_named(std::get<NamedDensity>(mu), u);
}

double psi_derivative(const Measure& mu, double u) {
  if (!(u < 0.0)) throw DomainError("psi_derivative requires u < 0");
  if (const auto* am = std::get_if<AtomicMeasure>(&mu)) {
    double acc = 0.0;
    for (std::size_t i = 0; i < am->size(); ++i) {
      const double t = am->nodes()[i];
      const double g = 1.0 - u * t;
      acc += am->weights()[i] * t / (g * g);
    }
    return acc;
  }
  return psi_derivative_named(std::get<NamedDensity>(mu), u);
}

double chi(const Measure& mu, double w) {
  const double m0 = kernel_mass(mu);
  if (!(w > m0 - 1.0 && w < 0.0))
    throw DomainError("chi requires w strictly inside (kernel_mass - 1, 0)");

  // psi(-e^x) decreases from 0- to m0-1 as x runs over the line, so bisect
  // on x; the log parametrization makes the bracket scale-free.
  double lo = -700.0, hi = 700.0;
  if (psi(mu, -std::exp(lo)) - w <= 0.0) return -std::exp(lo);
  if (psi(mu, -std::exp(hi)) - w >= 0.0) return -std::exp(hi);
  for (int iter = 0; iter < 60; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (psi(mu, -std::exp(mid)) - w > 0.0)
      lo = mid;
    else
      hi = mid;
  }

  double u = -std::exp(0.5 * (lo + hi));
  for (int polish = 0; polish < 4; ++polish) {
    const double r = psi(mu, u) - w;
    if (std::abs(r) <= 1e-13) break;
    double d;
    try {
      d = psi_derivative(mu, u);
    } catch (const DivergentIntegral&) {
      break;  // bisection alone already has ~1e-15 relative accuracy in u
    }
    if (!(d > 0.0)) break;
    double next = u - r / d;
    if (!(next < 0.0)) next = 0.5 * u;  // keep the iterate in the domain
    u = next;
  }
  return u;
}

double s_transform(const Measure& mu, double w) {
  return (1.0 + w) / w * chi(mu, w);
}

double s_of_inverse(const Measure& mu, double w) {
  if (kernel_mass(mu) > 0.0)
    throw SingularMomentError("s_of_inverse: measure has an atom at 0");
  if (!(w > -1.0 && w < 0.0))
    throw DomainError("s_of_inverse requires w (and -1-w) inside (-1, 0)");
  return 1.0 / s_transform(mu, -1.0 - w);
}

std::complex<double> cauchy_transform(const Measure& mu,
                                      std::complex<double> lambda) {
  if (lambda.imag() == 0.0 && lambda.real() >= 0.0)
    throw DomainError("cauchy_transform requires lambda off the half-line [0, inf)");
  if (const auto* am = std::get_if<AtomicMeasure>(&mu)) {
    std::complex<double> acc = 0.0;
    for (std::size_t i = 0; i < am->size(); ++i)
      acc += am->weights()[i] / (lambda - am->nodes()[i]);
    return acc;
  }
  const auto& d = std::get<NamedDensity>(mu);
  if (const int order = squared_family_order(d))
    return closed_forms::g_abs_zn_sq(lambda, order);
  if (d.family == Family::abs_x_sq) {
    // (1 - sqrt(1 - 4/lambda))/2; the principal square root keeps the
    // Herglotz property on both half-planes and is real on the negative axis.
    return 0.5 * (1.0 - std::sqrt(1.0 - 4.0 / lambda));
  }
  auto re = [&](double q) {
    const std::complex<double> g = lambda - d.quantile(q);
    return g.real() / std::norm(g);
  };
  auto im = [&](double q) {
    const std::complex<double> g = lambda - d.quantile(q);
    return -g.imag() / std::norm(g);
  };
  return {quad::integrate_checked(re, 0.0, 1.0).value,
          quad::integrate_checked(im, 0.0, 1.0).value};
}

double stieltjes_density(const Measure& mu, double x, double eps) {
  if (!(eps > 0.0)) throw DomainError("stieltjes_density requires eps > 0");
  return -cauchy_transform(mu, {x, eps}).imag() / kPi;
}

double r_bernoulli(double w, double lambda) {
  const double y = 2.0 * lambda * w;
  return lambda * y / (1.0 + std::sqrt(1.0 + y * y));
}

}  // namespace rdiag
