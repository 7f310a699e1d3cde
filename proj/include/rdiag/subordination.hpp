#pragma once

// Spectral-distribution engine for rotation-invariant (R-diagonal) operators.
// Given the distribution mu of |T|, this module evaluates the subordination
// functions h, k and s(lambda, t), the shifted determinant Delta(T - lambda)
// in its three radial regimes, and the full radial CDF of the spectral
// measure of T on its annulus, plus pushforwards and integral identities.

#include <complex>
#include <cstddef>
#include <vector>

#include "rdiag/interp.hpp"
#include "rdiag/measure.hpp"

namespace rdiag {

// Immutable bundle of the input measure mu = distribution of |T| together
// with its inner/outer L^2 radii.  Point masses are rejected at construction
// (DiracUnsupported): the annulus degenerates to a circle in that case.
class SubordinationContext {
 public:
  explicit SubordinationContext(Measure mu_abs);

  const Measure& mu_abs() const { return mu_abs_; }
  double lambda1() const { return lambda1_; }
  double lambda2() const { return lambda2_; }
  double kernel_mass() const { return kernel_mass_; }

 private:
  Measure mu_abs_;
  double lambda1_ = 0.0;
  double lambda2_ = 0.0;
  double kernel_mass_ = 0.0;
};

// h(s) = integral of s / (s^2 + u^2) d mu(u) for s > 0; lies in (0, 1/s).
double h_integral(const Measure& mu, double s);
double h_integral(const SubordinationContext& ctx, double s);

// k(s, t) = (s - t) (1/h(s) - s + t); strictly increasing in s beyond t.
double k_function(const SubordinationContext& ctx, double s, double t);

// The unique s > t with k(s, t) = lambda^2, to residual
// 1e-11 * max(1, lambda^2).  For t = 0 the reachable range of k is
// (lambda1^2, lambda2^2): lambda <= lambda1 throws BelowInnerRadius and
// lambda >= lambda2 throws AboveOuterRadius.
double solve_s(const SubordinationContext& ctx, double lambda, double t);

// Subordinated kernel integral of the shifted operator: h evaluated at
// s(lambda, t); conceptually integral of t/(t^2 + u^2) d mu_{|T - lambda|}(u).
double h_lambda(const SubordinationContext& ctx, double lambda, double t);

// Delta(T - lambda), total over the complex plane (only |lambda| enters):
//   |lambda| <= lambda1: Delta(T) (the determinant of mu itself);
//   |lambda| >= lambda2: |lambda|;
//   in between: (|lambda|^2/(|lambda|^2 + s0^2) * exp integral of
//     log(u^2 + s0^2) d mu(u))^(1/2) with s0 = s(|lambda|, 0).
double delta_shifted(const SubordinationContext& ctx,
                     std::complex<double> lambda);

// Rotation-invariant planar probability measure: an atom at the origin of
// mass kernel_mass plus a radial CDF F supported on the annulus
// [inner_radius, outer_radius].  F(r) = kernel_mass below the inner radius
// and tends to 1 at the outer radius.
class RadialBrownMeasure {
 public:
  RadialBrownMeasure(double kernel_mass, double inner_radius,
                     double outer_radius, std::vector<double> t,
                     std::vector<double> r);

  double kernel_mass() const { return kernel_mass_; }
  double inner_radius() const { return inner_radius_; }
  double outer_radius() const { return outer_radius_; }

  // F(r): mass of the closed disk of radius r.
  double cdf(double r) const;

  // Tabulated radius as a function of cumulative mass t in [t_min, t_max];
  // inverse of the CDF on the annulus.  Used for radial quadrature.
  double radius_at_mass(double t) const;
  double t_min() const { return t_.front(); }
  double t_max() const { return t_.back(); }

  const std::vector<double>& mass_grid() const { return t_; }
  const std::vector<double>& radius_grid() const { return r_; }

 private:
  double kernel_mass_;
  double inner_radius_;
  double outer_radius_;
  std::vector<double> t_;  // cumulative masses, strictly increasing
  std::vector<double> r_;  // radii, strictly increasing
  MonotoneCubic forward_;  // t -> r
  MonotoneCubic inverse_;  // r -> t
};

// Radial CDF of the spectral measure of T built from the S-transform of the
// squared measure: the disk of radius S(t-1)^(-1/2) has mass t.  The
// overload taking kernel_mass validates it against the 0-atom of mu;
// a named input must be an abs_z_pow_n family (the only named family whose
// square is again in closed form) — discretize other measures first.
RadialBrownMeasure radial_cdf(const SubordinationContext& ctx,
                              double kernel_mass);
RadialBrownMeasure radial_cdf(const SubordinationContext& ctx);

struct RadialDensity {
  double radial_pdf = 0.0;     // dF/dr
  double planar_density = 0.0; // dF/dr / (2 pi r)
};

// Central-difference densities at radius r; zeros outside the open annulus.
RadialDensity radial_density(const RadialBrownMeasure& mu, double r);

// Image of a rotation-invariant measure under z -> z^m, z -> 1/z, or
// z -> c z.  Inversion requires kernel_mass = 0 (else SingularMomentError).
RadialBrownMeasure planar_pushforward(const RadialBrownMeasure& mu,
                                      const PushforwardMap& map);

// Negative moment via the half-line kernel identity
//   integral of u^-p d mu(u) = (2/pi) sin(pi p/2) integral of s^-p h(s) ds
// for p in (0, 2).  Divergence (detected from the small-s growth of h)
// throws DivergentIntegral.
double neg_moment_via_h(const Measure& mu, double p);
double neg_moment_via_h(const SubordinationContext& ctx, double p);

// Uniform L^p bound on (z^n - lambda)^(-1), valid for every lambda: the
// L^p norm of z^-n, finite exactly for p in (0, 2/(n+1)) (else DomainError).
double resolvent_bound(int n, double p);

// integral of log|w - lambda| d mu_T(w) for the rotation-invariant measure:
// kernel_mass * log|lambda| plus the radial average log max(r, |lambda|).
double log_integral_radial(const RadialBrownMeasure& mu,
                           std::complex<double> lambda);

// integral of |w|^p d mu_T(w), p > 0, by radial quadrature.
double moment_radial(const RadialBrownMeasure& mu, double p);

}  // namespace rdiag
