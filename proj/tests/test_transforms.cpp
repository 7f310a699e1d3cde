// psi / chi / S-transform / Cauchy transform tests.  Oracles are exact atomic
// sums, independent quadrature in the quantile variable, and hand-derived
// closed forms for the quotient families.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "rdiag/closed_forms.hpp"
#include "rdiag/measure.hpp"
#include "rdiag/quadrature.hpp"
#include "rdiag/transforms.hpp"

using namespace rdiag;
using std::numbers::pi;

namespace {

Measure two_atoms() { return from_atoms({1.0, 2.0}, {0.5, 0.5}); }

Measure with_kernel() { return from_atoms({0.0, 1.0, 2.0}, {0.3, 0.35, 0.35}); }

}  // namespace

TEST_CASE("psi: exact atomic values, range, and domain") {
  const Measure mu = two_atoms();
  // 0.5/(1+1) + 0.5/(1+2) - 1 = -7/12.
  CHECK(psi(mu, -1.0) == doctest::Approx(-7.0 / 12.0).epsilon(1e-15));
  CHECK_THROWS_AS(psi(mu, 0.0), DomainError);
  CHECK_THROWS_AS(psi(mu, 0.5), DomainError);

  // psi maps (-inf, 0) into (m0 - 1, 0), saturating at the ends.
  const Measure nu = with_kernel();
  CHECK(psi(nu, -1e9) > -0.7);
  CHECK(psi(nu, -1e9) < -0.6999);
  CHECK(psi(nu, -1e-9) < 0.0);
  CHECK(psi(nu, -1e-9) > -1e-8);
}

TEST_CASE("psi of the quarter-circle-squared family against its moment series") {
  // For the squared circular element, psi solves u w^2 + (2u - 1) w + u = 0.
  const Measure mp = named_density(Family::abs_x_sq);
  for (double u : {-0.1, -1.0, -10.0}) {
    const double w = psi(mp, u);
    CHECK(u * w * w + (2.0 * u - 1.0) * w + u == doctest::Approx(0.0));
    CHECK(w == doctest::Approx(2.0 * u / ((1.0 - 2.0 * u) + std::sqrt(1.0 - 4.0 * u)))
                   .epsilon(1e-12));
  }
  // Small-u slope is the mean (= 1).
  CHECK(psi(mp, -1e-9) / -1e-9 == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("psi of the squared quotient families matches quantile-space quadrature") {
  for (int n : {1, 2}) {
    const NamedDensity d = named_density(Family::abs_zn_sq, n);
    for (double u : {-0.07, -0.7, -9.0}) {
      auto r = quad::integrate(
          [&](double q) {
            const double t = d.quantile(q);
            const double ut = u * t;
            return ut >= -1.0 ? ut / (1.0 - ut) : -1.0 + 1.0 / (1.0 - ut);
          },
          0.0, 1.0);
      CHECK(r.converged);
      CHECK(psi(Measure{d}, u) == doctest::Approx(r.value).epsilon(1e-9));
      // Independently derived closed value.
      const double a = std::pow(-u, 1.0 / (n + 1));
      CHECK(psi(Measure{d}, u) == doctest::Approx(-a / (1.0 + a)).epsilon(1e-13));
    }
  }
}

TEST_CASE("psi of the heavy-tailed modulus family against a logarithmic closed form") {
  // For |z| the Cauchy transform at lambda < 0 integrates in closed form:
  // psi(u) = (2/pi) lambda (lambda pi/2 + log(-lambda)) / (1 + lambda^2) - 1,
  // lambda = 1/u.
  const Measure z = named_density(Family::abs_z_pow_n, 1);
  for (double u : {-0.3, -1.0, -4.0}) {
    const double lam = 1.0 / u;
    const double expect =
        (2.0 / pi) * lam * (lam * pi / 2.0 + std::log(-lam)) / (1.0 + lam * lam) - 1.0;
    CHECK(psi(z, u) == doctest::Approx(expect).epsilon(1e-10));
  }
  CHECK(psi(z, -1.0) == doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("chi inverts psi on the open interval and rejects its endpoints") {
  const Measure mu = two_atoms();
  for (double w : {-0.9, -0.5, -0.1})
    CHECK(std::abs(psi(mu, chi(mu, w)) - w) <= 1e-12);
  for (double u : {-3.0, -1.0, -0.2})
    CHECK(chi(mu, psi(mu, u)) == doctest::Approx(u).epsilon(1e-9));

  CHECK_THROWS_AS(chi(mu, 0.0), DomainError);
  CHECK_THROWS_AS(chi(mu, -1.0), DomainError);
  CHECK_THROWS_AS(chi(mu, -1.3), DomainError);

  // With a kernel atom of mass 0.3 the domain shrinks to (-0.7, 0).
  const Measure nu = with_kernel();
  CHECK_THROWS_AS(chi(nu, -0.75), DomainError);
  CHECK(std::abs(psi(nu, chi(nu, -0.65)) - (-0.65)) <= 1e-12);

  // Named family roundtrip: psi_{|z|^2}(u) = -1/3 at u = -1/4.
  const Measure zsq = named_density(Family::abs_z_sq);
  CHECK(chi(zsq, -1.0 / 3.0) == doctest::Approx(-0.25).epsilon(1e-9));
  CHECK(std::abs(psi(zsq, chi(zsq, -0.5)) - (-0.5)) <= 1e-12);
}

TEST_CASE("S-transform closed forms for the named squared families") {
  const Measure mp = named_density(Family::abs_x_sq);
  for (double w : {-0.9, -0.5, -0.1})
    CHECK(s_transform(mp, w) == doctest::Approx(1.0 / (1.0 + w)).epsilon(1e-10));

  for (int n : {1, 2, 3}) {
    const Measure zn = named_density(Family::abs_zn_sq, n);
    for (double w : {-0.8, -0.5, -0.2})
      CHECK(s_transform(zn, w) ==
            doctest::Approx(std::pow(-w / (1.0 + w), n)).epsilon(1e-9));
  }
}

TEST_CASE("S-transform of a squared measure decreases between the L2 radii") {
  const AtomicMeasure base = from_atoms({1.0, 2.0}, {0.5, 0.5});
  const Measure sq = pushforward(base, PushforwardMap::square());
  const LambdaBounds lb = lambda_bounds(base);

  // Endpoints: (outer radius)^-2 at w -> 0-, (inner radius)^-2 at w -> -1+.
  CHECK(s_transform(sq, -1e-7) ==
        doctest::Approx(1.0 / (lb.outer * lb.outer)).epsilon(1e-5));
  CHECK(s_transform(sq, -1.0 + 1e-7) ==
        doctest::Approx(1.0 / (lb.inner * lb.inner)).epsilon(1e-5));
  CHECK(s_transform(sq, -1e-7) == doctest::Approx(0.4).epsilon(1e-5));
  CHECK(s_transform(sq, -1.0 + 1e-7) == doctest::Approx(0.625).epsilon(1e-5));

  double prev = s_transform(sq, -0.95);
  for (double w = -0.85; w < -0.04; w += 0.1) {
    const double cur = s_transform(sq, w);
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("inverse-measure S-transform: reflection identity and pushforward cross-check") {
  // Inversion-symmetric laws have s_of_inverse == s_transform.
  const Measure zsq = named_density(Family::abs_z_sq);
  for (double w : {-0.7, -0.3})
    CHECK(s_of_inverse(zsq, w) == doctest::Approx(s_transform(zsq, w)).epsilon(1e-9));
  const Measure sym = from_atoms({0.5, 2.0}, {0.5, 0.5});
  for (double w : {-0.6, -0.25})
    CHECK(s_of_inverse(sym, w) == doctest::Approx(s_transform(sym, w)).epsilon(1e-10));

  // General case: agree with the S-transform of the pushforward under t -> 1/t.
  const AtomicMeasure mu = from_atoms({1.0, 4.0}, {0.5, 0.5});
  const Measure inv = pushforward(mu, PushforwardMap::inverse());
  for (double w : {-0.8, -0.4, -0.15})
    CHECK(s_of_inverse(Measure{mu}, w) ==
          doctest::Approx(s_transform(inv, w)).epsilon(1e-8));

  CHECK_THROWS_AS(s_of_inverse(with_kernel(), -0.5), SingularMomentError);
  CHECK_THROWS_AS(s_of_inverse(Measure{mu}, -1.0), DomainError);
  CHECK_THROWS_AS(s_of_inverse(Measure{mu}, 0.0), DomainError);
}

TEST_CASE("Cauchy transform: atomic exact values and tail behavior") {
  const Measure mu = two_atoms();
  const auto g2 = cauchy_transform(mu, {-2.0, 0.0});
  CHECK(g2.real() == doctest::Approx(-7.0 / 24.0).epsilon(1e-15));
  CHECK(g2.imag() == 0.0);

  const auto gi = cauchy_transform(mu, {0.0, 1.0});
  CHECK(gi.real() == doctest::Approx(-0.45).epsilon(1e-14));
  CHECK(gi.imag() == doctest::Approx(-0.35).epsilon(1e-14));

  const auto gm = cauchy_transform(mu, {-1.0, 0.0});
  CHECK(gm.real() == doctest::Approx(-5.0 / 12.0).epsilon(1e-14));

  // The whole closed half-line [0, inf) is excluded, even off the support.
  CHECK_THROWS_AS(cauchy_transform(mu, {3.0, 0.0}), DomainError);
  CHECK_THROWS_AS(cauchy_transform(mu, {1.5, 0.0}), DomainError);
  CHECK_THROWS_AS(cauchy_transform(mu, {0.0, 0.0}), DomainError);

  // lambda G(lambda) -> 1 far from the support.
  const auto gf = cauchy_transform(mu, {-1e6, 0.0});
  CHECK((-1e6) * gf.real() == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("Cauchy transform of named squared families matches the closed form") {
  for (int n : {1, 2}) {
    const Measure zn = n == 1 ? Measure{named_density(Family::abs_z_sq)}
                              : Measure{named_density(Family::abs_zn_sq, n)};
    for (std::complex<double> lam : {std::complex<double>{-1.3, 0.7},
                                     std::complex<double>{0.4, -2.0},
                                     std::complex<double>{-5.0, 0.0}}) {
      const auto got = cauchy_transform(zn, lam);
      const auto want = closed_forms::g_abs_zn_sq(lam, n);
      CHECK(std::abs(got - want) <= 1e-9 * std::abs(want));
    }
  }
}

TEST_CASE("Stieltjes density recovers the spectral density") {
  // Quarter-circle-squared density at 1 is sqrt(3)/(2 pi).
  const Measure mp = named_density(Family::abs_x_sq);
  CHECK(stieltjes_density(mp, 1.0, 1e-6) ==
        doctest::Approx(std::sqrt(3.0) / (2.0 * pi)).epsilon(1e-4));
  CHECK_THROWS_AS(stieltjes_density(mp, 1.0, 0.0), DomainError);

  // Smoothed atomic density integrates to the total mass.
  const Measure mu = two_atoms();
  auto r = quad::integrate([&](double x) { return stieltjes_density(mu, x, 1e-3); },
                           -30.0, 30.0);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("Bernoulli R-transform: series limit and cancellation-free identity") {
  CHECK(r_bernoulli(0.0, 1.7) == 0.0);
  for (double w : {0.3, -0.3, 2.0})
    for (double lam : {0.5, 1.7}) {
      const double direct = (std::sqrt(1.0 + 4.0 * lam * lam * w * w) - 1.0) / (2.0 * w);
      CHECK(r_bernoulli(w, lam) == doctest::Approx(direct).epsilon(1e-12));
    }
  // Leading behavior lambda^2 w for small w, with no cancellation loss.
  CHECK(r_bernoulli(1e-8, 2.0) / 1e-8 == doctest::Approx(4.0).epsilon(1e-10));
}
