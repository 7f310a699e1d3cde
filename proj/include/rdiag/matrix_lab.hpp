#pragma once

// Random-matrix Monte Carlo and finite-matrix ground truth: Ginibre and
// spherical ensembles, spectra, matrix Fuglede-Kadison determinants, the
// spectral-measure grid recovered from the discrete Laplacian of the
// regularized log-determinant, and determinant-inequality checks.

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "rdiag/measure.hpp"

namespace rdiag {

using ComplexMatrix = Eigen::MatrixXcd;

struct EmpiricalSpectrum {
  enum class Kind { eigenvalues, singular_values };
  Kind kind = Kind::eigenvalues;
  int n = 0;
  std::vector<std::complex<double>> eigenvalues;  // when kind == eigenvalues
  std::vector<double> singular_values;            // sorted descending
};

// N x N matrix of i.i.d. complex Gaussians; real and imaginary parts are
// independent centered normals of variance 1/(2N), so E|a_ij|^2 = 1/N.
// Deterministic for a fixed (n, seed).
ComplexMatrix ginibre(int n, std::uint64_t seed);

// Eigenvalues of X Y^{-1} for independent Ginibre X, Y.  Y^{-1} is never
// formed: the spectrum is computed from the solve Y \ X, which is similar to
// X Y^{-1}.  A numerically singular Y is resampled; more than 3 failures
// throw SimulationError.
EmpiricalSpectrum spherical_ensemble(int n, std::uint64_t seed);

// Full spectra; decomposition failure throws LinAlgError.
EmpiricalSpectrum singular_values(const ComplexMatrix& a);
EmpiricalSpectrum eigenvalues(const ComplexMatrix& a);

// exp((1/N) sum of log sigma_i); exactly 0 when any singular value vanishes
// (below N * machine-eps * sigma_max).
double fk_det_matrix(const ComplexMatrix& a);

// (1/(2N)) sum of log(sigma_i(A - lambda I)^2 + eps^2); decreasing in eps
// and tending to log fk_det_matrix(A - lambda I) as eps -> 0.
double reg_logdet(const ComplexMatrix& a, std::complex<double> lambda,
                  double eps);

struct BrownBox {
  double x_min = 0.0, x_max = 0.0;
  double y_min = 0.0, y_max = 0.0;
};

struct BrownGrid {
  BrownBox box;
  int nx = 0, ny = 0;
  double eps = 0.0;
  double cell_dx = 0.0, cell_dy = 0.0;
  // Row-major cell masses: mass[iy * nx + ix] for the cell centered at
  // (x_min + (ix + 1/2) dx, y_min + (iy + 1/2) dy).
  std::vector<double> mass;
  double total_mass = 0.0;
  int clipped_cells = 0;      // small negatives zeroed
  double min_cell_mass = 0.0; // most negative raw cell value seen

  double cell_center_x(int ix) const { return box.x_min + (ix + 0.5) * cell_dx; }
  double cell_center_y(int iy) const { return box.y_min + (iy + 0.5) * cell_dy; }
};

// Spectral-measure recovery on a grid: cell mass = (1/2pi) * (five-point
// discrete Laplacian of the regularized log-determinant) * cell area.  For a
// finite matrix this approximates the normalized eigenvalue histogram.
// An eigenvalue within 2 cells of the box edge throws BoxTooTight; a cell
// below -1e-6 throws SimulationError (the limit function is subharmonic, so
// large negatives indicate numerical error); negatives above that are
// clipped to zero and counted.
BrownGrid brown_laplacian(const ComplexMatrix& a, const BrownBox& box, int nx,
                          int ny, double eps);

// Kolmogorov-Smirnov sup-distance between the empirical CDF of the samples
// and the model CDF.  Empty input throws DomainError.
double ks_statistic(std::vector<double> samples,
                    const std::function<double(double)>& cdf);

// One run of the determinant-identity suite on random N x N matrices:
// multiplicativity Delta(ST) = Delta(S) Delta(T), the block-triangular
// product formula, and the two one-sided bounds Delta(1+S) <= Delta(1+|S|)
// and Delta(1+|S^2|) <= Delta(1+|S|^2).
struct DetIdentityReport {
  double mult_rel_err = 0.0;       // |Delta(ST) - Delta(S)Delta(T)| / Delta(ST)
  double block_rel_err = 0.0;      // same for the block-triangular formula
  double shift_slack = 0.0;        // Delta(1+|S|) - Delta(1+S)  (>= 0 expected)
  double square_slack = 0.0;       // Delta(1+|S|^2) - Delta(1+|S^2|)
  bool shift_violated = false;
  bool square_violated = false;
  bool pass = false;               // rel errs <= 1e-10 and no violations
};

DetIdentityReport det_identity_suite(std::uint64_t seed, int n);

// Spectral vs singular-value power sums: lhs = (1/N) sum |lambda_i|^p,
// rhs = (1/N) sum sigma_i^p, pass = lhs <= rhs + 1e-9.
struct WeilResult {
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
};

WeilResult weil_check(const ComplexMatrix& a, double p);

// S-transform of the empirical squared singular-value measure; the spectrum
// must be of singular-value kind (else DomainError).
double empirical_s_transform(const EmpiricalSpectrum& spec, double w);

}  // namespace rdiag
