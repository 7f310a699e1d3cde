#pragma once

// Probability measures on [0, infinity) in two representations: finite
// atomic measures (sorted nodes with positive weights) and named closed-form
// densities with exact density/CDF/quantile callables.  Moments, the
// Fuglede-Kadison determinant, pushforwards, symmetrization, L^p norms and
// the inner/outer L^2 radii live here.

#include <cstddef>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace rdiag {

// ---------------------------------------------------------------------------
// Atomic measures
// ---------------------------------------------------------------------------

class AtomicMeasure {
 public:
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }
  std::size_t size() const { return nodes_.size(); }

  // Weight of the atom at 0 (zero when there is none).
  double kernel_mass() const {
    return (!nodes_.empty() && nodes_.front() == 0.0) ? weights_.front() : 0.0;
  }
  bool is_dirac() const { return nodes_.size() == 1; }

  // CDF (right-continuous): total weight of nodes <= x.
  double cdf(double x) const;
  // Left limit of the CDF: total weight of nodes < x.
  double cdf_left(double x) const;

  friend AtomicMeasure from_atoms(const std::vector<double>& nodes,
                                  const std::vector<double>& weights);

 private:
  AtomicMeasure() = default;
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

// Builds an atomic probability measure from parallel node/weight lists.
// Nodes are sorted; duplicates (equal within 1e-14 relative) merge by weight
// addition.  Weights must sum to 1 within 1e-6 (then rescaled exactly to 1);
// a larger deviation throws NormalizationError rather than silently fixing
// the input.  Negative nodes or nonpositive weights throw DomainError.
AtomicMeasure from_atoms(const std::vector<double>& nodes,
                         const std::vector<double>& weights);

// ---------------------------------------------------------------------------
// Named closed-form families
// ---------------------------------------------------------------------------

// Families: the modulus |z^n| of powers of the circular quotient z = x y^{-1},
// the squared circular element |x|^2 (quarter-circle squared, i.e. the
// Marchenko-Pastur law of ratio 1), and the squared-variable laws |z|^2 and
// |z^n|^2.
enum class Family { abs_z_pow_n, abs_x_sq, abs_z_sq, abs_zn_sq };

std::string family_name(Family f);
Family parse_family(const std::string& name);

struct NamedDensity {
  Family family = Family::abs_z_pow_n;
  int n = 1;  // power parameter (meaningful for abs_z_pow_n and abs_zn_sq)

  double density(double t) const;
  double cdf(double t) const;
  // Inverse CDF for q in [0, 1); throws DomainError outside.
  double quantile(double q) const;

  // Open interval (k_lo, k_hi) of exponents k with finite integral t^k.
  std::pair<double, double> moment_exponent_range() const;
};

NamedDensity named_density(Family family, int n = 1);

// m equal-weight atoms placed at the quantiles (k - 1/2)/m, k = 1..m.
AtomicMeasure quantile_discretize(const NamedDensity& d, std::size_t m);

// ---------------------------------------------------------------------------
// Either representation
// ---------------------------------------------------------------------------

using Measure = std::variant<AtomicMeasure, NamedDensity>;

double kernel_mass(const Measure& mu);
bool is_dirac(const Measure& mu);

// ---------------------------------------------------------------------------
// Moments, determinants, norms
// ---------------------------------------------------------------------------

// Sum of w_i t_i^k.  A negative k with an atom at 0 throws
// SingularMomentError.
double moment(const AtomicMeasure& mu, double k);

// Integral of t^k for a named family; returns +infinity when the moment
// diverges (k outside the finite-moment exponent range).
double moment(const NamedDensity& d, double k);
double moment(const Measure& mu, double k);

// exp(sum of w_i log t_i); exactly 0 when an atom sits at 0.
double fk_determinant(const AtomicMeasure& mu);
double fk_determinant(const NamedDensity& d);
double fk_determinant(const Measure& mu);

// Log of the above with a -infinity sentinel for a kernel atom.
double log_determinant(const AtomicMeasure& mu);

// Sum of w_i max(log t_i, 0).
double log_plus_integral(const AtomicMeasure& mu);

// (sum of w_i t_i^p)^(1/p) for p > 0.
double lp_norm(const AtomicMeasure& mu, double p);

// ---------------------------------------------------------------------------
// Pushforwards
// ---------------------------------------------------------------------------

struct PushforwardMap {
  enum class Kind { square, power, inverse, scale };
  Kind kind = Kind::square;
  double param = 0.0;  // exponent for power, factor for scale

  static PushforwardMap square() { return {Kind::square, 2.0}; }
  static PushforwardMap power(double m) { return {Kind::power, m}; }
  static PushforwardMap inverse() { return {Kind::inverse, 0.0}; }
  static PushforwardMap scale(double r) { return {Kind::scale, r}; }
};

// Image measure under t -> t^2, t -> t^m, t -> 1/t, or t -> r t; atoms are
// re-sorted and re-merged.  inverse (or power with negative exponent) with a
// kernel atom throws SingularMomentError; scale needs r > 0 and power m != 0.
AtomicMeasure pushforward(const AtomicMeasure& mu, const PushforwardMap& map);

// ---------------------------------------------------------------------------
// Symmetrization
// ---------------------------------------------------------------------------

// Even measure on the line assigning half of mu's mass to each sign:
// B -> (mu(B) + mu(-B)) / 2.
struct SymmetricMeasure {
  AtomicMeasure base;
  // Right-continuous CDF of the symmetrized measure.
  double cdf(double x) const;
};

SymmetricMeasure symmetrize(const AtomicMeasure& mu);

// ---------------------------------------------------------------------------
// L^2 support radii
// ---------------------------------------------------------------------------

// inner = (integral of t^-2)^(-1/2) with the convention inner = 0 when the
// integral diverges (in particular with an atom at 0); outer = (integral of
// t^2)^(1/2), possibly +infinity for named heavy-tailed families.  For a
// point mass both radii coincide and the Dirac flag is set.
struct LambdaBounds {
  double inner = 0.0;
  double outer = 0.0;
  bool dirac = false;
};

LambdaBounds lambda_bounds(const AtomicMeasure& mu);
LambdaBounds lambda_bounds(const Measure& mu);

}  // namespace rdiag
