#include "rdiag/subordination.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "rdiag/closed_forms.hpp"
#include "rdiag/errors.hpp"
#include "rdiag/quadrature.hpp"
#include "rdiag/transforms.hpp"

namespace rdiag {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Number of interior tabulation points for the radial CDF.
constexpr int kRadialGridSize = 2048;

// integral of g(t(q)) over the quantile variable q in (0,1).
template <typename F>
double quantile_integral(const NamedDensity& d, F&& g) {
  auto f = [&](double q) { return g(d.quantile(q)); };
  return quad::integrate_checked(f, 0.0, 1.0).value;
}

}  // namespace

// ---------------------------------------------------------------------------
// Kernel integral h and the subordination polynomial k
// ---------------------------------------------------------------------------

double h_integral(const Measure& mu, double s) {
  if (!(s > 0.0)) throw DomainError("h requires s > 0");
  if (const auto* am = std::get_if<AtomicMeasure>(&mu)) {
    double acc = 0.0;
    for (std::size_t i = 0; i < am->size(); ++i) {
      const double u = am->nodes()[i];
      acc += am->weights()[i] * s / (s * s + u * u);
    }
    return acc;
  }
  const auto& d = std::get<NamedDensity>(mu);
  if (d.family == Family::abs_z_pow_n) return closed_forms::h_n(s, d.n);
  // s/(s^2 + u^2) = (1/s) / (1 + (u/s)^2): the right factor stays in [0, 1]
  // for any magnitudes, whereas s^2 itself would under- or overflow at the
  // extreme s probed by half-line quadrature.
  auto f = [&](double q) {
    const double r = d.quantile(q) / s;
    return 1.0 / (1.0 + r * r);
  };
  // The kernel transitions from ~1 to ~0 around u = s, i.e. around the mass
  // coordinate q0 = F(s).  When s is deep below the bulk of the measure, q0
  // is many orders below 1 and no fixed abscissa of a panel on (0, 1) lands
  // near it, so integrate the two sides of the transition separately -- the
  // decaying shoulder above q0 in a logarithmic variable -- and aim the
  // absolute tolerance at the q0 scale instead of the default O(1) scale.
  const double q0 = std::min(d.cdf(s), 1.0);
  if (!(q0 > 0.0)) return 0.0;  // transition below representable mass
  quad::Options opt;
  opt.abs_tol = std::max(1e-290, 1e-13 * q0);
  double acc = quad::integrate_checked(f, 0.0, q0, opt).value;
  if (q0 < 1.0) {
    auto shoulder = [&](double y) {
      // Rounding at the top endpoint could push q0 e^y onto 1, which the
      // quantile rejects.
      const double q = std::min(q0 * std::exp(y), 0x1.fffffffffffffp-1);
      return f(q) * q;
    };
    acc += quad::integrate_checked(shoulder, 0.0, std::log(1.0 / q0), opt).value;
  }
  return acc / s;
}

double h_integral(const SubordinationContext& ctx, double s) {
  return h_integral(ctx.mu_abs(), s);
}

SubordinationContext::SubordinationContext(Measure mu_abs)
    : mu_abs_(std::move(mu_abs)) {
  if (is_dirac(mu_abs_))
    throw DiracUnsupported(
        "subordination requires a non-degenerate modulus distribution");
  const LambdaBounds b = lambda_bounds(mu_abs_);
  lambda1_ = b.inner;
  lambda2_ = b.outer;
  kernel_mass_ = rdiag::kernel_mass(mu_abs_);
}

double k_function(const SubordinationContext& ctx, double s, double t) {
  // (s - t)(1/h(s) - s + t) computed as d/h - d^2 so that tiny h (kernel
  // atoms, s -> 0) cannot overflow the intermediate 1/h.
  const double d = s - t;
  return d / h_integral(ctx, s) - d * d;
}

double solve_s(const SubordinationContext& ctx, double lambda, double t) {
  if (!(lambda > 0.0)) throw DomainError("solve_s requires lambda > 0");
  if (!(t >= 0.0)) throw DomainError("solve_s requires t >= 0");
  if (t == 0.0) {
    if (lambda <= ctx.lambda1())
      throw BelowInnerRadius("solve_s: |lambda| at or below the inner radius");
    if (lambda >= ctx.lambda2())
      throw AboveOuterRadius("solve_s: |lambda| at or above the outer radius");
  }
  const double target = lambda * lambda;

  // k(s, t) in terms of the offset d = s - t; strictly increasing in d.
  auto k_of = [&](double d) {
    const double s = t + d;
    return d / h_integral(ctx, s) - d * d;
  };

  // Geometric search for an upper bracket.
  double d_hi = std::max({1.0, t, lambda});
  bool bracketed = false;
  for (int grow = 0; grow < 400; ++grow) {
    if (k_of(d_hi) >= target) {
      bracketed = true;
      break;
    }
    d_hi *= 2.0;
  }
  if (!bracketed)
    throw AboveOuterRadius("solve_s: target outside the reachable range of k");

  double x_lo = -690.0;  // d = e^x; k(e^-690) is far below any valid target
  double x_hi = std::log(d_hi);
  if (k_of(std::exp(x_lo)) >= target) return t + std::exp(x_lo);
  for (int iter = 0; iter < 110; ++iter) {
    const double mid = 0.5 * (x_lo + x_hi);
    if (mid == x_lo || mid == x_hi) break;
    if (k_of(std::exp(mid)) < target)
      x_lo = mid;
    else
      x_hi = mid;
  }
  double d = std::exp(0.5 * (x_lo + x_hi));

  // A couple of secant steps tighten the residual when the bisection limit
  // of the log parametrization is above the requested tolerance.
  const double tol = 1e-11 * std::max(1.0, target);
  double lo_d = std::exp(x_lo), hi_d = std::exp(x_hi);
  for (int polish = 0; polish < 8; ++polish) {
    const double r = k_of(d) - target;
    if (std::abs(r) <= tol) break;
    const double r_lo = k_of(lo_d) - target;
    const double r_hi = k_of(hi_d) - target;
    if (r > 0.0)
      hi_d = d;
    else
      lo_d = d;
    const double denom = r_hi - r_lo;
    double next = (denom != 0.0) ? lo_d - r_lo * (hi_d - lo_d) / denom
                                 : 0.5 * (lo_d + hi_d);
    if (!(next > lo_d && next < hi_d)) next = 0.5 * (lo_d + hi_d);
    if (next == d) break;
    d = next;
  }
  return t + d;
}

double h_lambda(const SubordinationContext& ctx, double lambda, double t) {
  if (!(lambda > 0.0 && t > 0.0))
    throw DomainError("h_lambda requires lambda > 0 and t > 0");
  return h_integral(ctx, solve_s(ctx, lambda, t));
}

// ---------------------------------------------------------------------------
// Shifted determinant
// ---------------------------------------------------------------------------

double delta_shifted(const SubordinationContext& ctx,
                     std::complex<double> lambda) {
  const double a = std::abs(lambda);
  if (a <= ctx.lambda1()) return fk_determinant(ctx.mu_abs());
  if (a >= ctx.lambda2()) return a;

  const double s0 = solve_s(ctx, a, 0.0);
  double log_int;  // integral of log(u^2 + s0^2) d mu(u)
  if (const auto* am = std::get_if<AtomicMeasure>(&ctx.mu_abs())) {
    log_int = 0.0;
    for (std::size_t i = 0; i < am->size(); ++i) {
      const double u = am->nodes()[i];
      log_int += am->weights()[i] * std::log(u * u + s0 * s0);
    }
  } else {
    const auto& d = std::get<NamedDensity>(ctx.mu_abs());
    log_int = quantile_integral(
        d, [s0](double u) { return std::log(u * u + s0 * s0); });
  }
  return std::exp(0.5 * (std::log(a * a / (a * a + s0 * s0)) + log_int));
}

// ---------------------------------------------------------------------------
// Radial CDF
// ---------------------------------------------------------------------------

namespace {

const std::vector<double>& checked_radial_table(const std::vector<double>& t,
                                                const std::vector<double>& r) {
  if (t.size() != r.size() || t.size() < 2)
    throw DomainError("radial table needs at least two rows");
  for (std::size_t j = 1; j < t.size(); ++j)
    if (!(t[j] > t[j - 1]) || !(r[j] > r[j - 1]))
      throw DomainError("radial table must be strictly increasing");
  return t;
}

}  // namespace

RadialBrownMeasure::RadialBrownMeasure(double kernel_mass, double inner_radius,
                                       double outer_radius,
                                       std::vector<double> t,
                                       std::vector<double> r)
    : kernel_mass_(kernel_mass),
      inner_radius_(inner_radius),
      outer_radius_(outer_radius),
      t_(std::move(t)),
      r_(std::move(r)),
      forward_(checked_radial_table(t_, r_), r_),
      inverse_(r_, t_) {}

double RadialBrownMeasure::cdf(double r) const {
  if (r < inner_radius_) return kernel_mass_;
  if (r <= r_.front()) return t_.front();
  if (r >= r_.back()) return t_.back();
  return inverse_(r);
}

double RadialBrownMeasure::radius_at_mass(double t) const { return forward_(t); }

RadialBrownMeasure radial_cdf(const SubordinationContext& ctx,
                              double kernel_mass) {
  if (std::abs(kernel_mass - ctx.kernel_mass()) > 1e-12)
    throw DomainError("radial_cdf: kernel mass does not match the atom at 0");

  // Squared-modulus measure, whose S-transform generates the radii.
  const Measure squared = [&]() -> Measure {
    if (const auto* am = std::get_if<AtomicMeasure>(&ctx.mu_abs()))
      return pushforward(*am, PushforwardMap::square());
    const auto& d = std::get<NamedDensity>(ctx.mu_abs());
    if (d.family != Family::abs_z_pow_n)
      throw DomainError(
          "radial_cdf: only the |z^n| family has a closed-form square; "
          "discretize other named measures first");
    return named_density(Family::abs_zn_sq, d.n);
  }();

  const double m0 = ctx.kernel_mass();
  std::vector<double> ts, rs;
  ts.reserve(kRadialGridSize + 2);
  rs.reserve(kRadialGridSize + 2);
  ts.push_back(m0);
  rs.push_back(ctx.lambda1());
  for (int j = 0; j < kRadialGridSize; ++j) {
    // Cosine spacing clusters points at both mass endpoints, where the
    // radius has its steepest gradients for heavy-tailed inputs.
    const double frac =
        0.5 * (1.0 - std::cos(kPi * (j + 0.5) / kRadialGridSize));
    const double t = m0 + (1.0 - m0) * frac;
    const double s = s_transform(squared, t - 1.0);
    const double r = 1.0 / std::sqrt(s);
    if (!std::isfinite(r)) continue;
    if (r <= rs.back() * (1.0 + 1e-14)) continue;  // keep strictly increasing
    ts.push_back(t);
    rs.push_back(r);
  }
  if (std::isfinite(ctx.lambda2()) && ctx.lambda2() > rs.back()) {
    ts.push_back(1.0);
    rs.push_back(ctx.lambda2());
  }
  return RadialBrownMeasure(m0, ctx.lambda1(), ctx.lambda2(), std::move(ts),
                            std::move(rs));
}

RadialBrownMeasure radial_cdf(const SubordinationContext& ctx) {
  return radial_cdf(ctx, ctx.kernel_mass());
}

RadialDensity radial_density(const RadialBrownMeasure& mu, double r) {
  if (!(r > mu.inner_radius()) || r >= mu.outer_radius()) return {};
  double step = 1e-4 * std::max(1.0, r);
  step = std::min(step, 0.5 * (r - mu.inner_radius()));
  if (std::isfinite(mu.outer_radius()))
    step = std::min(step, 0.5 * (mu.outer_radius() - r));
  step = std::max(step, 1e-12);
  const double pdf = (mu.cdf(r + step) - mu.cdf(r - step)) / (2.0 * step);
  return {pdf, pdf / (2.0 * kPi * r)};
}

RadialBrownMeasure planar_pushforward(const RadialBrownMeasure& mu,
                                      const PushforwardMap& map) {
  const auto& t = mu.mass_grid();
  const auto& r = mu.radius_grid();

  if (map.kind == PushforwardMap::Kind::inverse) {
    if (mu.kernel_mass() > 0.0)
      throw SingularMomentError("planar inverse of a measure with an atom at 0");
    std::vector<double> nt, nr;
    nt.reserve(t.size());
    nr.reserve(t.size());
    for (std::size_t j = t.size(); j-- > 0;) {
      if (r[j] <= 0.0) continue;  // the origin maps out to infinity
      nt.push_back(1.0 - t[j]);
      nr.push_back(1.0 / r[j]);
    }
    const double inner =
        std::isfinite(mu.outer_radius()) ? 1.0 / mu.outer_radius() : 0.0;
    const double outer =
        mu.inner_radius() > 0.0 ? 1.0 / mu.inner_radius() : kInf;
    return RadialBrownMeasure(0.0, inner, outer, std::move(nt), std::move(nr));
  }

  double expo = 1.0, factor = 1.0;
  switch (map.kind) {
    case PushforwardMap::Kind::square:
      expo = 2.0;
      break;
    case PushforwardMap::Kind::power:
      expo = map.param;
      if (!(expo > 0.0))
        throw DomainError("planar power map requires a positive exponent");
      break;
    case PushforwardMap::Kind::scale:
      factor = map.param;
      if (!(factor > 0.0))
        throw DomainError("planar scale map requires a positive factor");
      break;
    case PushforwardMap::Kind::inverse:
      break;  // handled above
  }

  auto apply = [&](double x) {
    return (map.kind == PushforwardMap::Kind::scale) ? factor * x
                                                     : std::pow(x, expo);
  };
  std::vector<double> nr(r.size());
  for (std::size_t j = 0; j < r.size(); ++j) nr[j] = apply(r[j]);
  return RadialBrownMeasure(mu.kernel_mass(), apply(mu.inner_radius()),
                            apply(mu.outer_radius()), t, std::move(nr));
}

// ---------------------------------------------------------------------------
// Integral identities
// ---------------------------------------------------------------------------

double neg_moment_via_h(const Measure& mu, double p) {
  if (!(p > 0.0 && p < 2.0))
    throw DomainError("neg_moment_via_h requires p in (0, 2)");

  // Small-s growth exponent of h decides convergence: h ~ C s^alpha near 0
  // with alpha in [-1, 1], and s^-p h(s) is integrable iff p < 1 + alpha.
  const double ha = h_integral(mu, 1e-7);
  const double hb = h_integral(mu, 1e-9);
  const double alpha = (std::log(ha) - std::log(hb)) / std::log(100.0);
  if (p >= 1.0 + alpha - 0.01)
    throw DivergentIntegral("neg_moment_via_h: integral diverges at this order");

  // s^-p alone can overflow at the small-s extreme of the half-line map even
  // though s^-p h(s) ~ s^(1-p) is representable, so assemble the product in
  // log space.
  auto f = [&](double s) {
    const double h = h_integral(mu, s);
    if (!(h > 0.0)) return 0.0;
    return std::exp(std::log(h) - p * std::log(s));
  };
  const quad::Result r = quad::integrate_half_line(f);
  if (!r.converged)
    throw DivergentIntegral("neg_moment_via_h: kernel integral failed to converge");
  return (2.0 / kPi) * std::sin(kPi * p / 2.0) * r.value;
}

double neg_moment_via_h(const SubordinationContext& ctx, double p) {
  return neg_moment_via_h(ctx.mu_abs(), p);
}

double resolvent_bound(int n, double p) { return closed_forms::lp_norm_zn(n, p); }

double log_integral_radial(const RadialBrownMeasure& mu,
                           std::complex<double> lambda) {
  const double a = std::abs(lambda);
  double acc = mu.kernel_mass() > 0.0 ? mu.kernel_mass() * std::log(a) : 0.0;

  const double t_lo = mu.t_min(), t_hi = mu.t_max();
  // The circular average of log|w - lambda| over a radius-r circle is
  // log max(r, |lambda|), so integrate that in the mass variable.
  double split = t_lo;
  if (a >= mu.radius_grid().back()) {
    split = t_hi;
  } else if (a > mu.radius_grid().front()) {
    split = std::clamp(mu.cdf(a), t_lo, t_hi);
  }
  acc += (split - t_lo) * std::log(a);
  if (split < t_hi) {
    auto f = [&](double t) { return std::log(mu.radius_at_mass(t)); };
    acc += quad::integrate_checked(f, split, t_hi).value;
  }
  // Mass beyond the tabulated range (at most ~1e-7 for open-ended tails)
  // sits at radii >= the last tabulated one.
  const double tail = 1.0 - t_hi;
  if (tail > 0.0)
    acc += tail * std::log(std::max(a, mu.radius_grid().back()));
  return acc;
}

double moment_radial(const RadialBrownMeasure& mu, double p) {
  if (!(p > 0.0)) throw DomainError("moment_radial requires p > 0");
  auto f = [&](double t) { return std::pow(mu.radius_at_mass(t), p); };
  double acc = quad::integrate_checked(f, mu.t_min(), mu.t_max()).value;
  const double tail = 1.0 - mu.t_max();
  if (tail > 0.0) acc += tail * std::pow(mu.radius_grid().back(), p);
  return acc;
}

}  // namespace rdiag
