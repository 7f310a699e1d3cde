#pragma once

// Moment-generating transforms of measures on [0, infinity): psi and its
// inverse chi, the S-transform, the Cauchy transform with Stieltjes density
// recovery, and the R-transform of the symmetric two-point (Bernoulli)
// measure used by the subordination machinery.

#include <complex>

#include "rdiag/measure.hpp"

namespace rdiag {

enum class TransformDomain { psi_neg_axis, chi_interval, s_interval, cauchy_offcut };

// One transform evaluation, as surfaced by the command-line tool.
struct TransformPoint {
  std::complex<double> argument;
  std::complex<double> value;
  TransformDomain domain_tag = TransformDomain::psi_neg_axis;
};

// psi(u) = integral of 1/(1 - u t) d mu(t) - 1 for u < 0.  The value lies in
// (m0 - 1, 0) where m0 is the kernel-atom mass.  u >= 0 throws DomainError.
double psi(const Measure& mu, double u);

// d psi / d u, used by the Newton polish inside chi.
double psi_derivative(const Measure& mu, double u);

// Functional inverse of psi: the unique u < 0 with psi(u) = w, for w
// strictly inside (m0 - 1, 0); |psi(chi(w)) - w| <= 1e-12.  A w outside the
// open interval throws DomainError.
double chi(const Measure& mu, double w);

// S(w) = (1 + w)/w * chi(w) on the same domain as chi.  For the squared
// modulus of a nondegenerate operator it decreases from (outer L^2
// radius)^-2 at w -> 0- down to (inner radius)^-2 at w -> m0 - 1.
double s_transform(const Measure& mu, double w);

// S-transform of the inverse measure via the reflection identity
// 1 / S(-1 - w); requires no kernel atom (else SingularMomentError) and both
// w and -1 - w inside (-1, 0).
double s_of_inverse(const Measure& mu, double w);

// G(lambda) = integral of 1/(lambda - t) d mu(t) for lambda off [0, inf);
// atomic sum or the named closed form.  lambda on the cut throws DomainError.
std::complex<double> cauchy_transform(const Measure& mu,
                                      std::complex<double> lambda);

// -(1/pi) Im G(x + i eps): the smoothed spectral density at x.  Limit
// extrapolation over eps is the caller's job; this is a single evaluation.
double stieltjes_density(const Measure& mu, double x, double eps);

// R-transform of the symmetric Bernoulli measure (delta_{-lambda} +
// delta_{lambda})/2:  (sqrt(1 + 4 lambda^2 w^2) - 1) / (2 w), evaluated in
// the cancellation-free form 2 lambda^2 w / (1 + sqrt(1 + 4 lambda^2 w^2));
// value 0 at w = 0 (the series limit).
double r_bernoulli(double w, double lambda);

}  // namespace rdiag
