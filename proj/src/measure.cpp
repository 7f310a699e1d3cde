#include "rdiag/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "rdiag/closed_forms.hpp"
#include "rdiag/errors.hpp"
#include "rdiag/quadrature.hpp"

namespace rdiag {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Marchenko-Pastur (ratio 1) pieces for the |x|^2 family on (0, 4).
double mp_density(double t) {
  if (t <= 0.0 || t >= 4.0) return 0.0;
  return std::sqrt((4.0 - t) / t) / (2.0 * kPi);
}

double mp_cdf(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 4.0) return 1.0;
  const double alpha = std::asin(0.5 * std::sqrt(t));
  return (2.0 * alpha + std::sin(2.0 * alpha)) / kPi;
}

// Solve (2 alpha + sin 2 alpha)/pi = q for alpha in [0, pi/2], then t = 4 sin^2 alpha.
double mp_quantile(double q) {
  if (!(q >= 0.0 && q < 1.0)) throw DomainError("quantile requires q in [0,1)");
  if (q == 0.0) return 0.0;
  const double target = kPi * q;
  double lo = 0.0, hi = 0.5 * kPi;
  double alpha = 0.5 * target;  // decent starting bracket midpoint
  for (int iter = 0; iter < 200; ++iter) {
    const double g = 2.0 * alpha + std::sin(2.0 * alpha) - target;
    if (g > 0.0)
      hi = alpha;
    else
      lo = alpha;
    const double dg = 2.0 + 2.0 * std::cos(2.0 * alpha);
    double next = alpha - g / dg;  // Newton, kept inside the bracket
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == alpha) break;
    alpha = next;
  }
  const double s = std::sin(alpha);
  return 4.0 * s * s;
}

}  // namespace

// ---------------------------------------------------------------------------
// AtomicMeasure
// ---------------------------------------------------------------------------

double AtomicMeasure::cdf(double x) const {
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x);
  const auto count = static_cast<std::size_t>(it - nodes_.begin());
  return std::accumulate(weights_.begin(), weights_.begin() + count, 0.0);
}

double AtomicMeasure::cdf_left(double x) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), x);
  const auto count = static_cast<std::size_t>(it - nodes_.begin());
  return std::accumulate(weights_.begin(), weights_.begin() + count, 0.0);
}

AtomicMeasure from_atoms(const std::vector<double>& nodes,
                         const std::vector<double>& weights) {
  if (nodes.empty() || nodes.size() != weights.size())
    throw DomainError("from_atoms: node/weight lists must be nonempty and equal length");
  for (double t : nodes)
    if (!(t >= 0.0) || !std::isfinite(t))
      throw DomainError("from_atoms: nodes must be finite and nonnegative");
  for (double w : weights)
    if (!(w > 0.0) || !std::isfinite(w))
      throw DomainError("from_atoms: weights must be finite and positive");

  double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (std::abs(sum - 1.0) > 1e-6)
    throw NormalizationError("from_atoms: weights sum to " + std::to_string(sum) +
                             ", more than 1e-6 away from 1");

  std::vector<std::size_t> order(nodes.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return nodes[a] < nodes[b]; });

  AtomicMeasure out;
  out.nodes_.reserve(nodes.size());
  out.weights_.reserve(nodes.size());
  for (std::size_t idx : order) {
    const double t = nodes[idx];
    const double w = weights[idx] / sum;  // rescale the <=1e-6 discrepancy away
    if (!out.nodes_.empty()) {
      const double prev = out.nodes_.back();
      if (t - prev <= 1e-14 * std::max(std::abs(prev), std::abs(t))) {
        out.weights_.back() += w;
        continue;
      }
    }
    out.nodes_.push_back(t);
    out.weights_.push_back(w);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Named families
// ---------------------------------------------------------------------------

std::string family_name(Family f) {
  switch (f) {
    case Family::abs_z_pow_n: return "abs_z_pow_n";
    case Family::abs_x_sq: return "abs_x_sq";
    case Family::abs_z_sq: return "abs_z_sq";
    case Family::abs_zn_sq: return "abs_zn_sq";
  }
  throw DomainError("unknown family");
}

Family parse_family(const std::string& name) {
  if (name == "abs_z_pow_n") return Family::abs_z_pow_n;
  if (name == "abs_x_sq") return Family::abs_x_sq;
  if (name == "abs_z_sq") return Family::abs_z_sq;
  if (name == "abs_zn_sq") return Family::abs_zn_sq;
  throw DomainError("unknown measure family: " + name);
}

NamedDensity named_density(Family family, int n) {
  if (n < 1) throw DomainError("named_density: n must be a positive integer");
  if (family == Family::abs_z_sq) n = 1;  // |z|^2 is the n = 1 squared family
  if (family == Family::abs_x_sq) n = 1;
  return NamedDensity{family, n};
}

double NamedDensity::density(double t) const {
  switch (family) {
    case Family::abs_z_pow_n:
      return t > 0.0 ? closed_forms::abs_zn_density(t, n) : 0.0;
    case Family::abs_x_sq:
      return mp_density(t);
    case Family::abs_z_sq:
    case Family::abs_zn_sq: {
      if (t <= 0.0) return 0.0;
      const double u = std::sqrt(t);
      const int order = (family == Family::abs_z_sq) ? 1 : n;
      return closed_forms::abs_zn_density(u, order) / (2.0 * u);
    }
  }
  throw DomainError("unknown family");
}

double NamedDensity::cdf(double t) const {
  if (t <= 0.0) return 0.0;
  switch (family) {
    case Family::abs_z_pow_n:
      return closed_forms::abs_zn_cdf(t, n);
    case Family::abs_x_sq:
      return mp_cdf(t);
    case Family::abs_z_sq:
    case Family::abs_zn_sq: {
      const int order = (family == Family::abs_z_sq) ? 1 : n;
      return closed_forms::abs_zn_cdf(std::sqrt(t), order);
    }
  }
  throw DomainError("unknown family");
}

double NamedDensity::quantile(double q) const {
  switch (family) {
    case Family::abs_z_pow_n:
      return closed_forms::abs_zn_quantile(q, n);
    case Family::abs_x_sq:
      return mp_quantile(q);
    case Family::abs_z_sq:
    case Family::abs_zn_sq: {
      const int order = (family == Family::abs_z_sq) ? 1 : n;
      const double u = closed_forms::abs_zn_quantile(q, order);
      return u * u;
    }
  }
  throw DomainError("unknown family");
}

std::pair<double, double> NamedDensity::moment_exponent_range() const {
  switch (family) {
    case Family::abs_z_pow_n: {
      const double beta = 2.0 / (n + 1);
      return {-beta, beta};
    }
    case Family::abs_x_sq:
      return {-0.5, kInf};
    case Family::abs_z_sq:
      return {-0.5, 0.5};
    case Family::abs_zn_sq: {
      const double half_beta = 1.0 / (n + 1);
      return {-half_beta, half_beta};
    }
  }
  throw DomainError("unknown family");
}

AtomicMeasure quantile_discretize(const NamedDensity& d, std::size_t m) {
  if (m < 1) throw DomainError("quantile_discretize: need m >= 1");
  std::vector<double> nodes(m), weights(m, 1.0 / static_cast<double>(m));
  for (std::size_t k = 0; k < m; ++k) {
    const double q = (static_cast<double>(k) + 0.5) / static_cast<double>(m);
    nodes[k] = d.quantile(q);
  }
  return from_atoms(nodes, weights);
}

// ---------------------------------------------------------------------------
// Variant helpers
// ---------------------------------------------------------------------------

double kernel_mass(const Measure& mu) {
  if (const auto* am = std::get_if<AtomicMeasure>(&mu)) return am->kernel_mass();
  return 0.0;  // all named families are absolutely continuous
}

bool is_dirac(const Measure& mu) {
  if (const auto* am = std::get_if<AtomicMeasure>(&mu)) return am->is_dirac();
  return false;
}

// ---------------------------------------------------------------------------
// Moments, determinants, norms
// ---------------------------------------------------------------------------

double moment(const AtomicMeasure& mu, double k) {
  if (k < 0.0 && mu.kernel_mass() > 0.0)
    throw SingularMomentError("negative moment of a measure with an atom at 0");
  double acc = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i)
    acc += mu.weights()[i] * std::pow(mu.nodes()[i], k);
  return acc;
}

double moment(const NamedDensity& d, double k) {
  if (k == 0.0) return 1.0;
  const auto [lo, hi] = d.moment_exponent_range();
  if (k <= lo || k >= hi) return kInf;
  switch (d.family) {
    case Family::abs_z_pow_n: {
      const double p = std::abs(k);  // the family is invariant under t -> 1/t
      return (d.n + 1) * std::sin(kPi * p / 2.0) /
             std::sin((d.n + 1) * kPi * p / 2.0);
    }
    case Family::abs_z_sq:
      return moment(NamedDensity{Family::abs_z_pow_n, 1}, 2.0 * k);
    case Family::abs_zn_sq:
      return moment(NamedDensity{Family::abs_z_pow_n, d.n}, 2.0 * k);
    case Family::abs_x_sq: {
      auto f = [k](double t) { return std::pow(t, k) * mp_density(t); };
      return quad::integrate_checked(f, 0.0, 4.0).value;
    }
  }
  throw DomainError("unknown family");
}

double moment(const Measure& mu, double k) {
  if (const auto* am = std::get_if<AtomicMeasure>(&mu)) return moment(*am, k);
  return moment(std::get<NamedDensity>(mu), k);
}

double log_determinant(const AtomicMeasure& mu) {
  if (mu.kernel_mass() > 0.0) return -kInf;
  double acc = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i)
    acc += mu.weights()[i] * std::log(mu.nodes()[i]);
  return acc;
}

double fk_determinant(const AtomicMeasure& mu) {
  if (mu.kernel_mass() > 0.0) return 0.0;
  return std::exp(log_determinant(mu));
}

double fk_determinant(const NamedDensity& d) {
  switch (d.family) {
    case Family::abs_z_pow_n:
    case Family::abs_z_sq:
    case Family::abs_zn_sq:
      // Invariant under t -> 1/t, so the log integral vanishes exactly.
      return 1.0;
    case Family::abs_x_sq: {
      auto f = [](double t) { return std::log(t) * mp_density(t); };
      return std::exp(quad::integrate_checked(f, 0.0, 4.0).value);
    }
  }
  throw DomainError("unknown family");
}

double fk_determinant(const Measure& mu) {
  if (const auto* am = std::get_if<AtomicMeasure>(&mu)) return fk_determinant(*am);
  return fk_determinant(std::get<NamedDensity>(mu));
}

double log_plus_integral(const AtomicMeasure& mu) {
  double acc = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const double lt = std::log(mu.nodes()[i]);
    if (lt > 0.0) acc += mu.weights()[i] * lt;
  }
  return acc;
}

double lp_norm(const AtomicMeasure& mu, double p) {
  if (!(p > 0.0)) throw DomainError("lp_norm requires p > 0");
  return std::pow(moment(mu, p), 1.0 / p);
}

// ---------------------------------------------------------------------------
// Pushforward
// ---------------------------------------------------------------------------

AtomicMeasure pushforward(const AtomicMeasure& mu, const PushforwardMap& map) {
  double expo = 0.0;
  double factor = 1.0;
  switch (map.kind) {
    case PushforwardMap::Kind::square:
      expo = 2.0;
      break;
    case PushforwardMap::Kind::power:
      expo = map.param;
      if (expo == 0.0) throw DomainError("pushforward power: exponent must be nonzero");
      break;
    case PushforwardMap::Kind::inverse:
      expo = -1.0;
      break;
    case PushforwardMap::Kind::scale:
      factor = map.param;
      if (!(factor > 0.0)) throw DomainError("pushforward scale: factor must be positive");
      break;
  }
  if (expo < 0.0 && mu.kernel_mass() > 0.0)
    throw SingularMomentError("inverse pushforward of a measure with an atom at 0");

  std::vector<double> nodes(mu.size());
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const double t = mu.nodes()[i];
    nodes[i] = (map.kind == PushforwardMap::Kind::scale) ? factor * t
                                                         : std::pow(t, expo);
  }
  return from_atoms(nodes, mu.weights());
}

// ---------------------------------------------------------------------------
// Symmetrization
// ---------------------------------------------------------------------------

double SymmetricMeasure::cdf(double x) const {
  if (x < 0.0) return 0.5 * (1.0 - base.cdf_left(-x));
  return 0.5 + 0.5 * base.cdf(x);
}

SymmetricMeasure symmetrize(const AtomicMeasure& mu) { return SymmetricMeasure{mu}; }

// ---------------------------------------------------------------------------
// L^2 support radii
// ---------------------------------------------------------------------------

LambdaBounds lambda_bounds(const AtomicMeasure& mu) {
  LambdaBounds out;
  out.dirac = mu.is_dirac();
  double second = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i)
    second += mu.weights()[i] * mu.nodes()[i] * mu.nodes()[i];
  out.outer = std::sqrt(second);
  if (mu.kernel_mass() > 0.0) {
    out.inner = 0.0;  // the inverse-square integral diverges
  } else {
    double inv_second = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i)
      inv_second += mu.weights()[i] / (mu.nodes()[i] * mu.nodes()[i]);
    out.inner = 1.0 / std::sqrt(inv_second);
  }
  return out;
}

LambdaBounds lambda_bounds(const Measure& mu) {
  if (const auto* am = std::get_if<AtomicMeasure>(&mu)) return lambda_bounds(*am);
  const auto& d = std::get<NamedDensity>(mu);
  LambdaBounds out;
  out.dirac = false;
  const double second = moment(d, 2.0);
  const double inv_second = moment(d, -2.0);
  out.outer = std::isinf(second) ? kInf : std::sqrt(second);
  out.inner = std::isinf(inv_second) ? 0.0 : 1.0 / std::sqrt(inv_second);
  return out;
}

}  // namespace rdiag
