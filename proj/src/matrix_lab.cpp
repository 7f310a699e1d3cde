#include "rdiag/matrix_lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

#include "rdiag/errors.hpp"
#include "rdiag/rng.hpp"
#include "rdiag/transforms.hpp"

namespace rdiag {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// Dense singular values, descending.  Jacobi is the most accurate option and
// is fast enough below ~128; beyond that the Hermitian eigendecomposition of
// A*A costs an order of magnitude less and its sqrt(eigenvalue) accuracy
// (relative to sigma_max) is ample for Monte Carlo statistics.
std::vector<double> singular_values_vec(const ComplexMatrix& a) {
  const Eigen::Index n = a.rows();
  std::vector<double> out(static_cast<std::size_t>(n));
  if (n <= 128) {
    Eigen::JacobiSVD<ComplexMatrix> svd(a);
    if (svd.info() != Eigen::Success)
      throw LinAlgError("singular value decomposition did not converge");
    for (Eigen::Index i = 0; i < n; ++i) out[i] = svd.singularValues()(i);
  } else {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a.adjoint() * a);
    if (es.info() != Eigen::Success)
      throw LinAlgError("Hermitian eigendecomposition did not converge");
    for (Eigen::Index i = 0; i < n; ++i) {
      const double ev = std::max(es.eigenvalues()(n - 1 - i), 0.0);
      out[i] = std::sqrt(ev);
    }
  }
  return out;
}

void require_square(const ComplexMatrix& a) {
  if (a.rows() != a.cols() || a.rows() < 1)
    throw DomainError("matrix must be square and nonempty");
  if (!a.allFinite()) throw DomainError("matrix entries must be finite");
}

}  // namespace

ComplexMatrix ginibre(int n, std::uint64_t seed) {
  if (n < 1) throw DomainError("ginibre requires n >= 1");
  Rng rng(seed);
  const double sigma = 1.0 / std::sqrt(2.0 * n);
  ComplexMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = rng.cnormal(sigma);
  return a;
}

EmpiricalSpectrum eigenvalues(const ComplexMatrix& a) {
  require_square(a);
  Eigen::ComplexEigenSolver<ComplexMatrix> es(a, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success)
    throw LinAlgError("eigendecomposition did not converge");
  EmpiricalSpectrum spec;
  spec.kind = EmpiricalSpectrum::Kind::eigenvalues;
  spec.n = static_cast<int>(a.rows());
  spec.eigenvalues.resize(static_cast<std::size_t>(a.rows()));
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    spec.eigenvalues[i] = es.eigenvalues()(i);
  return spec;
}

EmpiricalSpectrum singular_values(const ComplexMatrix& a) {
  require_square(a);
  EmpiricalSpectrum spec;
  spec.kind = EmpiricalSpectrum::Kind::singular_values;
  spec.n = static_cast<int>(a.rows());
  spec.singular_values = singular_values_vec(a);
  return spec;
}

EmpiricalSpectrum spherical_ensemble(int n, std::uint64_t seed) {
  if (n < 1) throw DomainError("spherical_ensemble requires n >= 1");
  for (std::uint64_t attempt = 0; attempt < 4; ++attempt) {
    const ComplexMatrix x = ginibre(n, derive_seed(seed, 2 * attempt));
    const ComplexMatrix y = ginibre(n, derive_seed(seed, 2 * attempt + 1));
    Eigen::PartialPivLU<ComplexMatrix> lu(y);
    double u_max = 0.0, u_min = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < n; ++i) {
      const double d = std::abs(lu.matrixLU()(i, i));
      u_max = std::max(u_max, d);
      u_min = std::min(u_min, d);
    }
    if (!(u_min > n * kEps * u_max)) continue;  // numerically singular draw
    // Y \ X = Y^-1 X is similar to X Y^-1, so eigenvalues coincide.
    return eigenvalues(lu.solve(x));
  }
  throw SimulationError(
      "spherical_ensemble: denominator matrix singular in four draws");
}

double fk_det_matrix(const ComplexMatrix& a) {
  require_square(a);
  // Always the Jacobi path: the zero-detection threshold must resolve true
  // rank deficiency, which sqrt(eig(A*A)) blurs by eps * sigma_max^2.
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  if (svd.info() != Eigen::Success)
    throw LinAlgError("singular value decomposition did not converge");
  const Eigen::Index n = a.rows();
  const double cut = static_cast<double>(n) * kEps * svd.singularValues()(0);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double s = svd.singularValues()(i);
    if (s <= cut) return 0.0;
    acc += std::log(s);
  }
  return std::exp(acc / static_cast<double>(n));
}

double reg_logdet(const ComplexMatrix& a, std::complex<double> lambda,
                  double eps) {
  require_square(a);
  if (!(eps > 0.0)) throw DomainError("reg_logdet requires eps > 0");
  ComplexMatrix shifted = a;
  shifted.diagonal().array() -= lambda;
  const std::vector<double> sv = singular_values_vec(shifted);
  double acc = 0.0;
  for (double s : sv) acc += std::log(s * s + eps * eps);
  return acc / (2.0 * static_cast<double>(a.rows()));
}

BrownGrid brown_laplacian(const ComplexMatrix& a, const BrownBox& box, int nx,
                          int ny, double eps) {
  require_square(a);
  if (nx < 5 || ny < 5) throw DomainError("brown_laplacian grid too coarse");
  if (!(eps > 0.0)) throw DomainError("brown_laplacian requires eps > 0");
  if (!(box.x_max > box.x_min) || !(box.y_max > box.y_min))
    throw DomainError("brown_laplacian box must have positive extent");

  const int n = static_cast<int>(a.rows());
  const double dx = (box.x_max - box.x_min) / nx;
  const double dy = (box.y_max - box.y_min) / ny;

  for (const auto& ev : eigenvalues(a).eigenvalues) {
    if (ev.real() < box.x_min + 2.0 * dx || ev.real() > box.x_max - 2.0 * dx ||
        ev.imag() < box.y_min + 2.0 * dy || ev.imag() > box.y_max - 2.0 * dy)
      throw BoxTooTight("eigenvalue within two cells of the box edge");
  }

  // Tabulate f(lambda) = (1/2N) log det((A-l)*(A-l) + eps^2) at all cell
  // centers plus one ghost ring.  The shifted Gram matrix is assembled from
  // the precomputed A*A, and its Cholesky factor supplies the log-det.
  const ComplexMatrix gram = a.adjoint() * a;
  const ComplexMatrix adj = a.adjoint();
  const int fx = nx + 2, fy = ny + 2;
  std::vector<double> f(static_cast<std::size_t>(fx) * fy);
  ComplexMatrix b(n, n);
  for (int iy = -1; iy <= ny; ++iy) {
    const double cy = box.y_min + (iy + 0.5) * dy;
    for (int ix = -1; ix <= nx; ++ix) {
      const double cx = box.x_min + (ix + 0.5) * dx;
      const std::complex<double> lambda(cx, cy);
      b.noalias() = gram - std::conj(lambda) * a - lambda * adj;
      b.diagonal().array() += std::norm(lambda) + eps * eps;
      Eigen::LLT<ComplexMatrix> llt(b);
      double val;
      if (llt.info() == Eigen::Success) {
        val = 0.0;
        for (int i = 0; i < n; ++i)
          val += std::log(std::real(llt.matrixLLT()(i, i)));
        val /= n;
      } else {
        val = reg_logdet(a, lambda, eps);  // robust fallback
      }
      f[static_cast<std::size_t>(iy + 1) * fx + (ix + 1)] = val;
    }
  }

  BrownGrid grid;
  grid.box = box;
  grid.nx = nx;
  grid.ny = ny;
  grid.eps = eps;
  grid.cell_dx = dx;
  grid.cell_dy = dy;
  grid.mass.resize(static_cast<std::size_t>(nx) * ny);
  const double scale = dx * dy / (2.0 * kPi);
  double max_cell = 0.0;
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) {
      const std::size_t c = static_cast<std::size_t>(iy + 1) * fx + (ix + 1);
      const double lap =
          (f[c + 1] - 2.0 * f[c] + f[c - 1]) / (dx * dx) +
          (f[c + fx] - 2.0 * f[c] + f[c - fx]) / (dy * dy);
      const double m = lap * scale;
      grid.min_cell_mass = std::min(grid.min_cell_mass, m);
      max_cell = std::max(max_cell, m);
      grid.mass[static_cast<std::size_t>(iy) * nx + ix] = m;
    }
  }
  // The continuum density is nonnegative, but the five-point stencil
  // overshoots near features at or below the grid scale (sharp peaks around
  // well-separated eigenvalues), with lobes proportional to the peak cell
  // mass.  Tolerate negatives up to 1% of the peak (never tighter than the
  // absolute 1e-6 floor appropriate for spread-out spectra); anything larger
  // indicates a numerical failure, not a discretization artifact.
  const double neg_tol = std::max(1e-6, 1e-2 * max_cell);
  if (grid.min_cell_mass < -neg_tol)
    throw SimulationError(
        "brown_laplacian: cell mass below the negative tolerance; the "
        "regularized log-determinant should be subharmonic");
  for (double& m : grid.mass) {
    if (m < 0.0) {
      ++grid.clipped_cells;
      m = 0.0;
    }
    grid.total_mass += m;
  }
  return grid;
}

double ks_statistic(std::vector<double> samples,
                    const std::function<double(double)>& cdf) {
  if (samples.empty()) throw DomainError("ks_statistic requires samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double model = cdf(samples[i]);
    d = std::max(d, std::abs(model - static_cast<double>(i + 1) / n));
    d = std::max(d, std::abs(model - static_cast<double>(i) / n));
  }
  return d;
}

DetIdentityReport det_identity_suite(std::uint64_t seed, int n) {
  if (n < 2) throw DomainError("det_identity_suite requires n >= 2");
  const ComplexMatrix s = ginibre(n, derive_seed(seed, 0));
  const ComplexMatrix t = ginibre(n, derive_seed(seed, 1));

  DetIdentityReport rep;

  const double d_st = fk_det_matrix(s * t);
  const double d_s = fk_det_matrix(s);
  const double d_t = fk_det_matrix(t);
  rep.mult_rel_err = std::abs(d_st - d_s * d_t) / d_st;

  // Block upper-triangular: zero the lower-left block of a fresh draw and
  // compare against the tau-weighted product of the diagonal-block dets.
  const int n1 = n / 2, n2 = n - n1;
  ComplexMatrix bt = ginibre(n, derive_seed(seed, 2));
  bt.bottomLeftCorner(n2, n1).setZero();
  const double d_bt = fk_det_matrix(bt);
  const double d_11 = fk_det_matrix(ComplexMatrix(bt.topLeftCorner(n1, n1)));
  const double d_22 =
      fk_det_matrix(ComplexMatrix(bt.bottomRightCorner(n2, n2)));
  const double tau1 = static_cast<double>(n1) / n;
  const double blocks = std::pow(d_11, tau1) * std::pow(d_22, 1.0 - tau1);
  rep.block_rel_err = std::abs(d_bt - blocks) / d_bt;

  const ComplexMatrix eye = ComplexMatrix::Identity(n, n);
  const std::vector<double> sv = singular_values_vec(s);
  const std::vector<double> sv_sq = singular_values_vec(s * s);
  auto det_one_plus = [n](const std::vector<double>& vals) {
    double acc = 0.0;
    for (double v : vals) acc += std::log1p(v);
    return std::exp(acc / n);
  };
  const double lhs_shift = fk_det_matrix(eye + s);
  const double rhs_shift = det_one_plus(sv);
  rep.shift_slack = rhs_shift - lhs_shift;
  rep.shift_violated = lhs_shift > rhs_shift * (1.0 + 1e-12) + 1e-15;

  std::vector<double> sv2(sv.size());
  for (std::size_t i = 0; i < sv.size(); ++i) sv2[i] = sv[i] * sv[i];
  const double lhs_square = det_one_plus(sv_sq);
  const double rhs_square = det_one_plus(sv2);
  rep.square_slack = rhs_square - lhs_square;
  rep.square_violated = lhs_square > rhs_square * (1.0 + 1e-12) + 1e-15;

  rep.pass = rep.mult_rel_err <= 1e-10 && rep.block_rel_err <= 1e-10 &&
             !rep.shift_violated && !rep.square_violated;
  return rep;
}

WeilResult weil_check(const ComplexMatrix& a, double p) {
  require_square(a);
  if (!(p > 0.0)) throw DomainError("weil_check requires p > 0");
  const int n = static_cast<int>(a.rows());
  WeilResult res;
  for (const auto& ev : eigenvalues(a).eigenvalues)
    res.lhs += std::pow(std::abs(ev), p);
  for (double s : singular_values_vec(a)) res.rhs += std::pow(s, p);
  res.lhs /= n;
  res.rhs /= n;
  res.pass = res.lhs <= res.rhs + 1e-9;
  return res;
}

double empirical_s_transform(const EmpiricalSpectrum& spec, double w) {
  if (spec.kind != EmpiricalSpectrum::Kind::singular_values)
    throw DomainError("empirical_s_transform needs a singular-value spectrum");
  if (spec.singular_values.empty())
    throw DomainError("empirical_s_transform: empty spectrum");
  std::vector<double> nodes(spec.singular_values.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double s = spec.singular_values[i];
    nodes[i] = s * s;
  }
  const std::vector<double> weights(nodes.size(), 1.0 / nodes.size());
  return s_transform(from_atoms(nodes, weights), w);
}

}  // namespace rdiag
