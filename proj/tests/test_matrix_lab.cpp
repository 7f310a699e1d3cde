// Random-matrix laboratory: ensembles, spectra, matrix determinants, the
// spectral-measure grid, and the Monte Carlo bridges to the closed-form and
// subordination predictions.  All seeds are pinned, so every bound below is
// a deterministic regression value with margin, not a statistical gamble.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "rdiag/closed_forms.hpp"
#include "rdiag/errors.hpp"
#include "rdiag/matrix_lab.hpp"
#include "rdiag/measure.hpp"
#include "rdiag/rng.hpp"
#include "rdiag/subordination.hpp"

using namespace rdiag;
namespace cf = rdiag::closed_forms;
using std::numbers::pi;

namespace {

ComplexMatrix diag_matrix(const std::vector<std::complex<double>>& d) {
  ComplexMatrix a = ComplexMatrix::Zero(d.size(), d.size());
  for (int i = 0; i < static_cast<int>(d.size()); ++i) a(i, i) = d[i];
  return a;
}

double quotient_radial_cdf(double r) { return r * r / (1.0 + r * r); }

}  // namespace

TEST_CASE("ginibre: determinism, seed sensitivity, second moment") {
  const ComplexMatrix a = ginibre(16, 42);
  const ComplexMatrix b = ginibre(16, 42);
  CHECK((a - b).norm() == 0.0);
  CHECK((a - ginibre(16, 43)).norm() > 1e-3);

  // E |a_ij|^2 = 1/N, so tr(A A*) / N concentrates at 1.
  for (std::uint64_t k = 0; k < 20; ++k) {
    const ComplexMatrix g = ginibre(128, derive_seed(2026, k));
    CHECK(g.squaredNorm() / 128.0 == doctest::Approx(1.0).epsilon(0.05));
  }
}

TEST_CASE("spectra of explicit small matrices") {
  const ComplexMatrix d = diag_matrix({{3.0, 0.0}, {0.0, 4.0}});
  const EmpiricalSpectrum sv = singular_values(d);
  REQUIRE(sv.kind == EmpiricalSpectrum::Kind::singular_values);
  REQUIRE(sv.singular_values.size() == 2);
  CHECK(sv.singular_values[0] == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(sv.singular_values[1] == doctest::Approx(3.0).epsilon(1e-14));

  const EmpiricalSpectrum ev = eigenvalues(d);
  REQUIRE(ev.kind == EmpiricalSpectrum::Kind::eigenvalues);
  REQUIRE(ev.eigenvalues.size() == 2);
  std::vector<double> mods;
  for (auto z : ev.eigenvalues) mods.push_back(std::abs(z));
  std::sort(mods.begin(), mods.end());
  CHECK(mods[0] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(mods[1] == doctest::Approx(4.0).epsilon(1e-12));

  // Nilpotent: eigenvalues all zero, singular values {1, 0}.
  ComplexMatrix nil = ComplexMatrix::Zero(2, 2);
  nil(0, 1) = 1.0;
  for (auto z : eigenvalues(nil).eigenvalues) CHECK(std::abs(z) <= 1e-8);
  const auto nsv = singular_values(nil).singular_values;
  CHECK(nsv[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(nsv[1] == doctest::Approx(0.0));
}

TEST_CASE("singular values are unitarily invariant") {
  const ComplexMatrix a = ginibre(40, 7);
  Eigen::HouseholderQR<ComplexMatrix> qr(ginibre(40, 8));
  const ComplexMatrix q = qr.householderQ();
  const auto sa = singular_values(a).singular_values;
  const auto sqa = singular_values(q * a).singular_values;
  REQUIRE(sa.size() == sqa.size());
  for (std::size_t i = 0; i < sa.size(); ++i)
    CHECK(sqa[i] == doctest::Approx(sa[i]).epsilon(1e-10));
  CHECK(fk_det_matrix(q) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("matrix determinant: exact values and the geometric-mean identity") {
  CHECK(fk_det_matrix(diag_matrix({{1.0, 0.0}, {2.0, 0.0}})) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(fk_det_matrix(ComplexMatrix::Identity(5, 5)) == doctest::Approx(1.0));

  ComplexMatrix zr = ginibre(6, 11);
  zr.row(3).setZero();
  CHECK(fk_det_matrix(zr) == 0.0);

  // Same geometric mean when recomputed from the returned singular values.
  const ComplexMatrix a = ginibre(150, 5);
  const auto sv = singular_values(a).singular_values;
  double acc = 0.0;
  for (double s : sv) acc += std::log(s);
  CHECK(fk_det_matrix(a) == doctest::Approx(std::exp(acc / 150.0)).epsilon(1e-8));
}

TEST_CASE("regularized log-determinant decreases in eps and converges") {
  const ComplexMatrix a = ginibre(16, 99);
  const std::complex<double> lam{0.3, 0.1};
  const double v1 = reg_logdet(a, lam, 1e-1);
  const double v2 = reg_logdet(a, lam, 1e-2);
  const double v3 = reg_logdet(a, lam, 1e-3);
  CHECK(v1 > v2);
  CHECK(v2 > v3);

  ComplexMatrix shifted = a;
  shifted.diagonal().array() -= lam;
  CHECK(reg_logdet(a, lam, 1e-7) ==
        doctest::Approx(std::log(fk_det_matrix(shifted))).epsilon(1e-8));
}

TEST_CASE("spectral grid of a single atom: localization and mass") {
  // 65 cells put the atom exactly at the center cell's midpoint.
  const ComplexMatrix a = diag_matrix({{0.3, 0.2}});
  const BrownBox box{-0.7, 1.3, -0.8, 1.2};
  const BrownGrid g = brown_laplacian(a, box, 65, 65, 2.0 / 65.0 / 2.0);

  CHECK(g.total_mass == doctest::Approx(1.0).epsilon(0.03));

  int best = 0;
  for (int i = 1; i < 65 * 65; ++i)
    if (g.mass[i] > g.mass[best]) best = i;
  CHECK(best % 65 == 32);
  CHECK(best / 65 == 32);

  // The regularization kernel has width eps, so a 7x7 window (radius ~7 eps)
  // holds all but ~1/49 of the mass.
  double window = 0.0;
  for (int dy = -3; dy <= 3; ++dy)
    for (int dx = -3; dx <= 3; ++dx) window += g.mass[(32 + dy) * 65 + (32 + dx)];
  CHECK(window >= 0.93);
  CHECK(window <= 1.001);
}

TEST_CASE("spectral grid of a normal 4-atom matrix: per-atom clusters") {
  const ComplexMatrix a =
      diag_matrix({{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}});
  const double lo = -1.5, hi = -1.5 + 256.0 / 85.0;  // cell width exactly 1/85
  const BrownBox box{lo, hi, lo, hi};
  const double h = (hi - lo) / 256.0;
  const BrownGrid g = brown_laplacian(a, box, 256, 256, h / 2.0);

  CHECK(g.total_mass == doctest::Approx(1.0).epsilon(0.02));
  CHECK(g.min_cell_mass > -1e-3);
  CHECK(g.clipped_cells > 0);

  const auto cluster = [&](double x, double y) {
    const int ix = static_cast<int>(std::floor((x - lo) / h));
    const int iy = static_cast<int>(std::floor((y - lo) / h));
    double m = 0.0;
    for (int dy = -1; dy <= 1; ++dy)
      for (int dx = -1; dx <= 1; ++dx) m += g.mass[(iy + dy) * 256 + (ix + dx)];
    return m;
  };
  for (auto [x, y] : {std::pair{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}}) {
    const double m = cluster(x, y);
    CHECK(m >= 0.23);
    CHECK(m <= 0.27);
  }
}

TEST_CASE("spectral grid input validation") {
  const ComplexMatrix a = diag_matrix({{0.0, 0.0}});
  // Atom within two cells of the box edge.
  CHECK_THROWS_AS(brown_laplacian(a, {-0.05, 1.0, -0.05, 1.0}, 20, 20, 0.01),
                  BoxTooTight);
  const BrownBox ok{-1.0, 1.0, -1.0, 1.0};
  CHECK_THROWS_AS(brown_laplacian(a, ok, 4, 20, 0.01), DomainError);
  CHECK_THROWS_AS(brown_laplacian(a, ok, 20, 4, 0.01), DomainError);
  CHECK_THROWS_AS(brown_laplacian(a, ok, 20, 20, 0.0), DomainError);
  CHECK_THROWS_AS(brown_laplacian(a, {1.0, -1.0, -1.0, 1.0}, 20, 20, 0.01),
                  DomainError);
}

TEST_CASE("Kolmogorov-Smirnov statistic") {
  auto uniform01 = [](double x) { return std::clamp(x, 0.0, 1.0); };
  CHECK(ks_statistic({0.5}, uniform01) == doctest::Approx(0.5).epsilon(1e-14));

  std::vector<double> grid;
  for (int i = 1; i <= 10; ++i) grid.push_back(i / 10.0);
  CHECK(ks_statistic(grid, uniform01) == doctest::Approx(0.1).epsilon(1e-12));

  // Inverse-transform samples against their own model.
  Rng rng(314);
  std::vector<double> smp(10000);
  for (double& x : smp) x = rng.uniform();
  CHECK(ks_statistic(smp, uniform01) < 0.02);

  CHECK_THROWS_AS(ks_statistic({}, uniform01), DomainError);
}

TEST_CASE("spectral vs singular power sums") {
  ComplexMatrix nil = ComplexMatrix::Zero(2, 2);
  nil(0, 1) = 1.0;
  const WeilResult wn = weil_check(nil, 1.0);
  CHECK(wn.lhs == doctest::Approx(0.0));
  CHECK(wn.rhs == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(wn.pass);

  // Equality for a normal matrix.
  const WeilResult we = weil_check(diag_matrix({{1.0, 0.0}, {0.0, 2.0}}), 1.3);
  CHECK(std::abs(we.lhs - we.rhs) <= 1e-12);
  CHECK(we.pass);

  const WeilResult wg = weil_check(ginibre(64, 17), 2.0);
  CHECK(wg.lhs <= wg.rhs + 1e-9);
  CHECK(wg.pass);
}

TEST_CASE("determinant identity suite passes on random input") {
  const DetIdentityReport rep = det_identity_suite(2026, 16);
  CHECK(rep.mult_rel_err <= 1e-10);
  CHECK(rep.block_rel_err <= 1e-10);
  CHECK_FALSE(rep.shift_violated);
  CHECK_FALSE(rep.square_violated);
  CHECK(rep.shift_slack >= 0.0);
  CHECK(rep.square_slack >= 0.0);
  CHECK(rep.pass);
}

TEST_CASE("1x1 spherical ensemble reproduces the exact quotient law") {
  // For N = 1 the eigenvalue is a ratio of two complex Gaussians, whose
  // modulus has CDF r^2/(1+r^2) exactly.
  std::vector<double> mods;
  mods.reserve(100000);
  for (std::uint64_t k = 0; k < 100000; ++k) {
    const EmpiricalSpectrum s = spherical_ensemble(1, derive_seed(777, k));
    mods.push_back(std::abs(s.eigenvalues[0]));
  }
  CHECK(ks_statistic(mods, quotient_radial_cdf) < 0.01);

  const EmpiricalSpectrum r1 = spherical_ensemble(6, 123);
  const EmpiricalSpectrum r2 = spherical_ensemble(6, 123);
  REQUIRE(r1.eigenvalues.size() == r2.eigenvalues.size());
  for (std::size_t i = 0; i < r1.eigenvalues.size(); ++i)
    CHECK(r1.eigenvalues[i] == r2.eigenvalues[i]);
}

TEST_CASE("large spherical ensemble: radial law and rotation invariance") {
  const EmpiricalSpectrum s = spherical_ensemble(512, 4242);
  REQUIRE(s.eigenvalues.size() == 512);

  std::vector<double> mods, args;
  for (auto z : s.eigenvalues) {
    mods.push_back(std::abs(z));
    args.push_back(std::arg(z));
  }
  CHECK(ks_statistic(mods, quotient_radial_cdf) < 0.07);
  CHECK(ks_statistic(args, [](double t) {
          return std::clamp((t + pi) / (2.0 * pi), 0.0, 1.0);
        }) < 0.07);
}

TEST_CASE("empirical kernel integral of the shifted quotient matrix") {
  // Z - I = (X - Y) Y^{-1} for Z = X Y^{-1}; its singular values feed the
  // empirical version of the subordinated kernel integral at lambda = 1.
  const int n = 512;
  const ComplexMatrix x = ginibre(n, derive_seed(31337, 0));
  const ComplexMatrix y = ginibre(n, derive_seed(31337, 1));
  const ComplexMatrix m =
      y.transpose().partialPivLu().solve((x - y).transpose()).transpose();
  const auto sv = singular_values(m).singular_values;

  const SubordinationContext ctx(Measure{named_density(Family::abs_z_pow_n, 1)});
  for (double t : {0.5, 1.0, 2.0}) {
    double emp = 0.0;
    for (double s : sv) emp += t / (t * t + s * s);
    emp /= n;
    CHECK(emp == doctest::Approx(h_lambda(ctx, 1.0, t)).epsilon(0.05));
  }
}

TEST_CASE("empirical S-transform of squared singular values") {
  EmpiricalSpectrum ones;
  ones.kind = EmpiricalSpectrum::Kind::singular_values;
  ones.n = 4;
  ones.singular_values = {1.0, 1.0, 1.0, 1.0};
  CHECK(empirical_s_transform(ones, -0.5) == doctest::Approx(1.0).epsilon(1e-9));

  // Ginibre squared singular values follow the quarter-circle-squared law,
  // whose S-transform is 1/(1+w).
  const EmpiricalSpectrum g = singular_values(ginibre(512, 2718));
  CHECK(empirical_s_transform(g, -0.5) == doctest::Approx(2.0).epsilon(0.05));

  EmpiricalSpectrum wrong;
  wrong.kind = EmpiricalSpectrum::Kind::eigenvalues;
  wrong.n = 1;
  wrong.eigenvalues = {{1.0, 0.0}};
  CHECK_THROWS_AS(empirical_s_transform(wrong, -0.5), DomainError);
}
