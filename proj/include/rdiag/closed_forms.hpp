#pragma once

// Exact formulas for the operator family z = x y^{-1} (quotient of two free
// circular elements) and its integer powers z^n.  Everything here is pure
// real/complex arithmetic: densities, CDFs, quantiles, a Cauchy transform,
// L^p norms, and the half-line Cauchy kernel integral h_n.  Numerical
// integration never appears in this module; quadrature cross-checks live in
// the test suite.

#include <complex>

namespace rdiag::closed_forms {

// Density of |z| at t >= 0:  (2/pi) / (1 + t^2).
double abs_z_density(double t);

// Density of |z^n| at t > 0:
//   (2/pi) sin(pi/(n+1)) / ( t ( t^{2/(n+1)} + 2 cos(pi/(n+1)) + t^{-2/(n+1)} ) ).
// Reduces to abs_z_density at n = 1.  Throws DomainError for t <= 0.
double abs_zn_density(double t, int n);

// CDF of |z^n| at t >= 0.  Closed form via the arctangent antiderivative in
// the variable v = t^{2/(n+1)}; equals (2/pi) atan(t) at n = 1.
double abs_zn_cdf(double t, int n);

// Quantile (inverse CDF) of |z^n| for q in [0, 1); exact inverse of
// abs_zn_cdf.  Throws DomainError for q outside [0, 1).
double abs_zn_quantile(double q, int n);

// Planar density of the spectral distribution of z^n at s in C:
//   (1/(n pi)) |s|^{2/n - 2} / (1 + |s|^{2/n})^2.
// At n = 1 this is 1 / (pi (1 + |s|^2)^2).
double brown_zn_density(std::complex<double> s, int n);

// Radial CDF of the spectral distribution of z^n: mass of the disk of
// radius r >= 0, equal to r^{2/n} / (1 + r^{2/n}).
double brown_zn_radial_cdf(double r, int n);

// L^p norm of z^n (and of z^{-n}, which has the same norm), finite exactly
// for 0 < p < 2/(n+1):
//   ||z^n||_p = ( (n+1) sin(pi p / 2) / sin((n+1) pi p / 2) )^{1/p}.
// Throws DomainError when p is outside (0, 2/(n+1)).
double lp_norm_zn(int n, double p);

// Half-line Cauchy kernel integral of the |z^n| distribution:
//   integral over u of s / (s^2 + u^2) d mu_{|z^n|}(u) = 1 / (s + s^{(n-1)/(n+1)}).
// Throws DomainError for s <= 0.
double h_n(double s, int n);

// Cauchy transform of the distribution of |z^n|^2 at lambda off [0, infinity):
//   1 / ( lambda (1 + (-lambda)^{-1/(n+1)}) ),
// using the principal branch of the complex power.  Throws DomainError when
// lambda lies on the cut [0, infinity).
std::complex<double> g_abs_zn_sq(std::complex<double> lambda, int n);

// The classical integral  integral_0^inf t^{beta-1} / (1+t) dt = pi / sin(beta pi)
// for beta in (0, 1); used as a self-test target for the quadrature engine.
// Throws DomainError for beta outside (0, 1).
double beta_integral(double beta);

}  // namespace rdiag::closed_forms
