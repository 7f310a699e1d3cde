#include "rdiag/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rdiag/closed_forms.hpp"
#include "rdiag/matrix_lab.hpp"
#include "rdiag/measure.hpp"
#include "rdiag/quadrature.hpp"
#include "rdiag/rng.hpp"
#include "rdiag/subordination.hpp"
#include "rdiag/transforms.hpp"

namespace rdiag {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::uint64_t kBaseSeed = 0x00005eed5eed5eedull;

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

std::string format_short(double v) {
  std::ostringstream os;
  os << std::setprecision(4) << v;
  return os.str();
}

template <typename Body>
CriterionResult guarded(int index, const char* name, double time_limit,
                        Body&& body) {
  Stopwatch sw;
  CriterionResult r;
  r.index = index;
  r.name = name;
  try {
    body(r);
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = sw.seconds();
  if (time_limit > 0.0 && r.seconds >= time_limit) {
    r.pass = false;
    r.detail += (r.detail.empty() ? "" : "; ") + std::string("over the ") +
                format_short(time_limit) + "s time budget";
  }
  return r;
}

double quotient_radial_cdf(double r) { return r * r / (1.0 + r * r); }
double quotient_modulus_cdf(double t) { return (2.0 / kPi) * std::atan(t); }

// Y^{-1} X for independent Gaussian draws; distributionally the quotient
// ensemble (transposing exchanges the factor order without changing either
// the eigenvalue or the singular-value law).
ComplexMatrix quotient_matrix(int n, std::uint64_t seed) {
  const ComplexMatrix x = ginibre(n, derive_seed(seed, 0));
  const ComplexMatrix y = ginibre(n, derive_seed(seed, 1));
  return Eigen::PartialPivLU<ComplexMatrix>(y).solve(x);
}

// --- criterion 1: radial CDF pipeline on the discretized quotient family ---
void radial_pipeline(CriterionResult& r) {
  const AtomicMeasure am =
      quantile_discretize(named_density(Family::abs_z_pow_n, 1), 10000);
  const SubordinationContext ctx{Measure{am}};
  const RadialBrownMeasure rbm = radial_cdf(ctx);
  double sup = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double radius = 0.1 * std::pow(100.0, i / 199.0);
    sup = std::max(sup,
                   std::abs(rbm.cdf(radius) - quotient_radial_cdf(radius)));
  }
  r.observed = sup;
  r.bound = 5e-3;
  r.pass = sup <= r.bound;
  r.detail = "sup error over 200 log-spaced radii in [0.1, 10], 1e4 atoms";
}

// --- criterion 2: closed-form L^p norms against direct quadrature ---
void lp_norm_quadrature(CriterionResult& r) {
  double worst = 0.0;
  for (int n = 1; n <= 3; ++n) {
    const double beta = 2.0 / (n + 1);
    for (const double p : {0.1, 0.45 * beta}) {
      const double closed = closed_forms::lp_norm_zn(n, p);
      // Quadrature of t^p * density, mapped through t = v^(1/beta) so both
      // the origin and the heavy tail land on finite intervals.
      const double inv_beta = 1.0 / beta;
      auto head = [&](double v) {
        const double t = std::pow(v, inv_beta);
        return std::pow(t, p) * closed_forms::abs_zn_density(t, n) *
               inv_beta * std::pow(v, inv_beta - 1.0);
      };
      auto tail = [&](double u) {
        const double t = std::pow(u, -inv_beta);
        return std::pow(t, p) * closed_forms::abs_zn_density(t, n) *
               inv_beta * std::pow(u, -inv_beta - 1.0);
      };
      const double mom = quad::integrate_checked(head, 0.0, 1.0).value +
                         quad::integrate_checked(tail, 0.0, 1.0).value;
      const double via_quad = std::pow(mom, 1.0 / p);
      worst = std::max(worst, std::abs(via_quad - closed) / closed);
    }
  }
  r.observed = worst;
  r.bound = 1e-6;
  r.pass = worst <= r.bound;
  r.detail = "relative error, n in {1,2,3}, p in {0.1, 0.45*(2/(n+1))}";
}

// --- criterion 3: kernel integral h vs its closed form ---
void kernel_integral_closed_form(CriterionResult& r) {
  double worst = 0.0;
  for (int n = 1; n <= 3; ++n) {
    const AtomicMeasure am =
        quantile_discretize(named_density(Family::abs_z_pow_n, n), 100000);
    const Measure mu{am};
    for (const double s : {0.1, 1.0, 10.0})
      worst = std::max(
          worst, std::abs(h_integral(mu, s) - closed_forms::h_n(s, n)));
  }
  r.observed = worst;
  r.bound = 1e-4;
  r.pass = worst <= r.bound;
  r.detail = "1e5 atoms, s in {0.1, 1, 10}, n in {1, 2, 3}";
}

// --- criterion 4: negative moment through the half-line kernel identity ---
void negative_moment_identity(CriterionResult& r) {
  const double value =
      neg_moment_via_h(Measure{named_density(Family::abs_z_pow_n, 1)}, 0.5);
  r.observed = std::abs(value - std::numbers::sqrt2);
  r.bound = 1e-6;
  r.pass = r.observed <= r.bound;
  r.detail = "order-1/2 negative moment of the quotient modulus vs sqrt(2)";
}

// --- criterion 5: shifted determinant in all three radial regimes ---
void shifted_determinant_cross_check(CriterionResult& r) {
  const SubordinationContext ctx{Measure{named_density(Family::abs_z_pow_n, 1)}};
  const double logd = std::log(delta_shifted(ctx, {1.0, 0.0}));
  const double err_closed = std::abs(logd - 0.5 * std::log(2.0));
  const RadialBrownMeasure rbm = radial_cdf(ctx);
  const double err_radial =
      std::abs(logd - log_integral_radial(rbm, {1.0, 0.0}));

  const SubordinationContext two_atoms{
      Measure{from_atoms({1.0, 3.0}, {0.5, 0.5})}};
  const double err_outer =
      std::abs(delta_shifted(two_atoms, {10.0, 0.0}) - 10.0);

  r.observed = std::max(err_closed, err_radial);
  r.bound = 1e-3;
  r.pass = err_closed <= 1e-3 && err_radial <= 1e-3 && err_outer <= 1e-12;
  r.detail = "closed value and radial quadrature at |lambda|=1; outside the "
             "outer radius exact to 1e-12 (err " +
             format_short(err_outer) + ")";
}

// --- criterion 6: matrix spectral-measure grid vs eigenvalue histogram ---
void matrix_brown_recovery(CriterionResult& r) {
  // Block size 64 keeps the comparison below the pseudospectral smearing
  // scale of a non-normal Gaussian matrix at eps = h/2 (TV roughly halves
  // with each block-size doubling: 0.44 / 0.22 / 0.10 / 0.04 at 8/16/32/64).
  const int n = 64, cells = 256, block = 64;
  const ComplexMatrix a = ginibre(n, derive_seed(kBaseSeed, 600));
  const EmpiricalSpectrum spec = eigenvalues(a);

  double extent = 0.0;
  for (const auto& ev : spec.eigenvalues)
    extent = std::max({extent, std::abs(ev.real()), std::abs(ev.imag())});
  const double half = extent + 0.15;
  const BrownBox box{-half, half, -half, half};
  const double h = 2.0 * half / cells;

  const BrownGrid grid = brown_laplacian(a, box, cells, cells, 0.5 * h);

  const int nb = cells / block;
  std::vector<double> block_mass(static_cast<std::size_t>(nb) * nb, 0.0);
  std::vector<double> block_hist(block_mass.size(), 0.0);
  for (int iy = 0; iy < cells; ++iy)
    for (int ix = 0; ix < cells; ++ix)
      block_mass[static_cast<std::size_t>(iy / block) * nb + ix / block] +=
          grid.mass[static_cast<std::size_t>(iy) * cells + ix];
  for (const auto& ev : spec.eigenvalues) {
    const int ix = std::clamp(
        static_cast<int>((ev.real() - box.x_min) / grid.cell_dx), 0, cells - 1);
    const int iy = std::clamp(
        static_cast<int>((ev.imag() - box.y_min) / grid.cell_dy), 0, cells - 1);
    block_hist[static_cast<std::size_t>(iy / block) * nb + ix / block] +=
        1.0 / n;
  }
  double tv = 0.0;
  for (std::size_t i = 0; i < block_mass.size(); ++i)
    tv += std::abs(block_mass[i] - block_hist[i]);
  tv *= 0.5;

  r.observed = tv;
  r.bound = 0.05;
  r.pass = tv <= r.bound && grid.total_mass >= 0.97 && grid.total_mass <= 1.03;
  r.detail = "64x64 Gaussian matrix, 256^2 grid, eps = h/2; total mass " +
             format_short(grid.total_mass) + ", histogram compared on " +
             std::to_string(nb) + "x" + std::to_string(nb) + " blocks";
}

// --- criterion 7: quotient-ensemble eigenvalue and singular-value laws ---
void spherical_ensemble_distributions(CriterionResult& r, Tier tier) {
  const int n_eig = tier == Tier::full ? 256 : 128;
  const int trials = tier == Tier::full ? 20 : 10;
  const double eig_bound = tier == Tier::full ? 0.03 : 0.05;
  const int n_sv = tier == Tier::full ? 512 : 128;
  const double sv_bound = tier == Tier::full ? 0.05 : 0.07;

  double ks_sum = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    const EmpiricalSpectrum spec =
        spherical_ensemble(n_eig, derive_seed(kBaseSeed, 700 + trial));
    std::vector<double> moduli(spec.eigenvalues.size());
    for (std::size_t i = 0; i < moduli.size(); ++i)
      moduli[i] = std::abs(spec.eigenvalues[i]);
    ks_sum += ks_statistic(std::move(moduli), quotient_radial_cdf);
  }
  const double mean_ks = ks_sum / trials;

  const ComplexMatrix z = quotient_matrix(n_sv, derive_seed(kBaseSeed, 790));
  const double sv_ks =
      ks_statistic(singular_values(z).singular_values, quotient_modulus_cdf);

  r.observed = mean_ks;
  r.bound = eig_bound;
  r.pass = mean_ks <= eig_bound && sv_ks <= sv_bound;
  r.detail = "mean radial KS over " + std::to_string(trials) + " trials at N=" +
             std::to_string(n_eig) + "; singular-value KS " +
             format_short(sv_ks) + " (bound " + format_short(sv_bound) +
             ") at N=" + std::to_string(n_sv);
}

// --- criterion 8: determinant identity suite ---
void determinant_identity_suite(CriterionResult& r) {
  double worst = 0.0;
  int violations = 0;
  for (int k = 0; k < 100; ++k) {
    const DetIdentityReport rep =
        det_identity_suite(derive_seed(kBaseSeed, 800 + k), 32);
    worst = std::max({worst, rep.mult_rel_err, rep.block_rel_err});
    if (rep.shift_violated || rep.square_violated) ++violations;
  }
  r.observed = worst;
  r.bound = 1e-10;
  r.pass = worst <= r.bound && violations == 0;
  r.detail = "100 random 32x32 runs; " + std::to_string(violations) +
             " one-sided-bound violations";
}

// --- criterion 9: spectral vs singular-value power sums ---
void power_sum_domination(CriterionResult& r) {
  int violations = 0;
  for (int k = 0; k < 100; ++k) {
    const ComplexMatrix a = ginibre(64, derive_seed(kBaseSeed, 900 + k));
    for (const double p : {0.5, 1.0, 2.0})
      if (!weil_check(a, p).pass) ++violations;
  }

  // Normal matrices: unitary conjugation of a diagonal, where eigenvalue
  // moduli and singular values coincide and both sums must agree.
  double eq_err = 0.0;
  for (int k = 0; k < 5; ++k) {
    const int n = 32;
    Rng rng(derive_seed(kBaseSeed, 950 + k));
    ComplexMatrix d = ComplexMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i) d(i, i) = rng.cnormal(1.0);
    const ComplexMatrix q =
        Eigen::HouseholderQR<ComplexMatrix>(ginibre(n, derive_seed(kBaseSeed, 960 + k)))
            .householderQ();
    const ComplexMatrix normal = q * d * q.adjoint();
    for (const double p : {0.5, 1.0, 2.0}) {
      const WeilResult res = weil_check(normal, p);
      eq_err = std::max(eq_err, std::abs(res.lhs - res.rhs));
    }
  }

  r.observed = eq_err;
  r.bound = 1e-10;
  r.pass = violations == 0 && eq_err <= r.bound;
  r.detail = std::to_string(violations) +
             " violations over 100 random 64x64 matrices, p in {1/2, 1, 2}; "
             "observed value is the normal-matrix equality error";
}

// --- criterion 10: transform inverses and the inverse-measure reflection ---
void transform_inverse_roundtrip(CriterionResult& r) {
  Rng rng(derive_seed(kBaseSeed, 1000));
  double worst_round = 0.0, worst_reflect = 0.0;
  for (int k = 0; k < 100; ++k) {
    const std::size_t m = 2 + static_cast<std::size_t>(k % 11);
    std::vector<double> nodes(m), weights(m);
    double total = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      nodes[i] = 0.05 + std::abs(rng.normal());
      weights[i] = 0.1 + 0.9 * rng.uniform();
      total += weights[i];
    }
    for (double& w : weights) w /= total;
    const AtomicMeasure am = from_atoms(nodes, weights);
    const Measure mu{am};

    const double u0 = -std::exp(std::log(1e-3) + rng.uniform() * std::log(1e5));
    const double u1 = chi(mu, psi(mu, u0));
    worst_round = std::max(worst_round, std::abs(u1 - u0) / std::abs(u0));

    const double w = -0.05 - 0.9 * rng.uniform();
    const double direct =
        s_transform(Measure{pushforward(am, PushforwardMap::inverse())}, w);
    const double reflected = s_of_inverse(mu, w);
    worst_reflect =
        std::max(worst_reflect, std::abs(direct - reflected) / std::abs(reflected));
  }
  r.observed = worst_round;
  r.bound = 1e-10;
  r.pass = worst_round <= 1e-10 && worst_reflect <= 1e-8;
  r.detail = "inverse-measure reflection two-path error " +
             format_short(worst_reflect) + " (bound 1e-8), 100 random atomic "
             "measures";
}

// --- criterion 11: empirical S-transform multiplicativity ---
void s_transform_multiplicativity(CriterionResult& r, Tier tier) {
  const int n = tier == Tier::full ? 512 : 128;
  const double bound = tier == Tier::full ? 0.15 : 0.25;

  const ComplexMatrix z = quotient_matrix(n, derive_seed(kBaseSeed, 1100));
  const double s_z = empirical_s_transform(singular_values(z), -0.5);
  const double s_zz = empirical_s_transform(singular_values(z * z), -0.5);
  const double power_err = std::abs(s_zz / (s_z * s_z) - 1.0);

  const ComplexMatrix a = ginibre(n, derive_seed(kBaseSeed, 1101));
  const ComplexMatrix b = ginibre(n, derive_seed(kBaseSeed, 1102));
  const double s_ab = empirical_s_transform(singular_values(a * b), -0.5);
  const double s_a = empirical_s_transform(singular_values(a), -0.5);
  const double s_b = empirical_s_transform(singular_values(b), -0.5);
  const double product_err = std::abs(s_ab / (s_a * s_b) - 1.0);

  r.observed = std::max(power_err, product_err);
  r.bound = bound;
  r.pass = r.observed <= bound;
  r.detail = "relative error at w=-1/2: matrix-square check " +
             format_short(power_err) + ", independent-product check " +
             format_short(product_err) + " at N=" + std::to_string(n) +
             "; full free-convolution measure recovery is not attempted";
}

}  // namespace

std::vector<CriterionResult> run_acceptance(Tier tier) {
  std::vector<CriterionResult> results;
  results.push_back(guarded(1, "radial-cdf-pipeline", 10.0, radial_pipeline));
  results.push_back(
      guarded(2, "lp-norm-closed-vs-quadrature", 5.0, lp_norm_quadrature));
  results.push_back(guarded(3, "kernel-integral-closed-form", 0.0,
                            kernel_integral_closed_form));
  results.push_back(
      guarded(4, "negative-moment-identity", 0.0, negative_moment_identity));
  results.push_back(guarded(5, "shifted-determinant-cross-check", 0.0,
                            shifted_determinant_cross_check));
  results.push_back(
      guarded(6, "matrix-brown-grid-recovery", 120.0, matrix_brown_recovery));
  results.push_back(guarded(7, "spherical-ensemble-distributions", 180.0,
                            [tier](CriterionResult& r) {
                              spherical_ensemble_distributions(r, tier);
                            }));
  results.push_back(guarded(8, "determinant-identity-suite", 0.0,
                            determinant_identity_suite));
  results.push_back(
      guarded(9, "spectral-vs-singular-power-sums", 0.0, power_sum_domination));
  results.push_back(guarded(10, "transform-inverse-roundtrip", 0.0,
                            transform_inverse_roundtrip));
  results.push_back(guarded(11, "s-transform-multiplicativity", 0.0,
                            [tier](CriterionResult& r) {
                              s_transform_multiplicativity(r, tier);
                            }));
  return results;
}

bool print_acceptance_report(std::ostream& out,
                             const std::vector<CriterionResult>& results) {
  bool all_pass = true;
  for (const auto& r : results) {
    all_pass = all_pass && r.pass;
    std::ostringstream line;
    line << "criterion " << std::setw(2) << r.index << "  "
         << (r.pass ? "PASS" : "FAIL") << "  " << std::left << std::setw(34)
         << r.name << std::right << "  observed=" << std::setw(9)
         << format_short(r.observed) << "  bound=" << std::setw(8)
         << format_short(r.bound) << "  time=" << format_short(r.seconds)
         << "s";
    if (!r.detail.empty()) line << "  | " << r.detail;
    out << line.str() << "\n";
  }
  out << (all_pass ? "acceptance: all 11 criteria passed"
                   : "acceptance: FAILURES present")
      << "\n";
  return all_pass;
}

}  // namespace rdiag
