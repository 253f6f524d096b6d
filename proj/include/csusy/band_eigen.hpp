#ifndef CSUSY_BAND_EIGEN_HPP
#define CSUSY_BAND_EIGEN_HPP

// Building blocks of the eigensolver for complex-symmetric band matrices
// (A = A^T, not Hermitian). All similarity transforms are complex
// orthogonal (G G^T = I), which preserves A = A^T.

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace csusy::band {

using Complex = std::complex<double>;
using Eigen::Index;

/// Largest |i - j| with a nonzero entry.
Index bandwidth(const Eigen::MatrixXcd& a);

/// True when a(i, j) == a(j, i) exactly.
bool is_complex_symmetric(const Eigen::MatrixXcd& a);

struct Tridiagonal {
  Eigen::VectorXcd diag;
  Eigen::VectorXcd sub;  // size n - 1
};

/// Reduces a complex-symmetric matrix of bandwidth `bw` to tridiagonal form
/// by Givens rotations with bulge chasing (Schwarz ordering). Works on a
/// copy. Throws std::runtime_error if a rotation would be ill-conditioned
/// (x^2 + y^2 ~ 0 for nonzero x, y).
Tridiagonal reduce_to_tridiagonal(Eigen::MatrixXcd a, Index bw);

struct TridiagonalEigenvalues {
  std::vector<Complex> values;
  std::vector<bool> converged;
};

/// Implicit QL with Wilkinson-type shifts on a complex-symmetric
/// tridiagonal matrix, at most `max_iter` sweeps per eigenvalue.
TridiagonalEigenvalues tridiagonal_eigenvalues(Tridiagonal t, int max_iter = 60);

/// LU factorisation with partial pivoting of (A - shift I) for a band
/// matrix A of bandwidth `bw` given in dense storage.
class BandLU {
 public:
  BandLU(const Eigen::MatrixXcd& a, Index bw, Complex shift);
  Eigen::VectorXcd solve(Eigen::VectorXcd rhs) const;
  Index size() const { return n_; }

 private:
  Complex& at(Index row, Index col) { return work_(row, col - row + bw_); }
  const Complex& at(Index row, Index col) const { return work_(row, col - row + bw_); }

  Index n_;
  Index bw_;
  Eigen::MatrixXcd work_;     // row i holds columns [i - bw, i + 2 bw]
  Eigen::MatrixXcd lower_;    // multipliers, lower_(k, j) for row j + 1 + k
  std::vector<Index> pivot_;
};

/// y = A x touching only the band.
Eigen::VectorXcd band_multiply(const Eigen::MatrixXcd& a, Index bw, const Eigen::VectorXcd& x);

}  // namespace csusy::band

#endif  // CSUSY_BAND_EIGEN_HPP
