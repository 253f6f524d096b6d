#ifndef CSUSY_SPECTRAL_HPP
#define CSUSY_SPECTRAL_HPP

#include "csusy/darboux.hpp"
#include "csusy/numerics.hpp"

#include <optional>
#include <vector>

namespace csusy {

enum class KineticStencil {
  second_order,  // (-1, 2, -1)/h^2, tridiagonal
  sixth_order,   // (-1/90, 3/20, -3/2, 49/18, ...)/h^2, bandwidth 3
};

/// -d^2/dx^2 + V on the interior nodes 1..n-2 of a grid, with psi pinned
/// to zero at both end nodes. Wider stencils see odd-reflected ghost
/// values (psi(-k) = -psi(k) about each end node), which keeps the matrix
/// complex symmetric.
struct DenseOperator {
  Grid1D grid;
  Eigen::MatrixXcd matrix;
  ComplexFunction potential;
  Index bandwidth = 1;
  KineticStencil stencil = KineticStencil::sixth_order;

  Index dimension() const { return matrix.rows(); }
};

DenseOperator discretize(const ComplexFunction& v, KineticStencil stencil = KineticStencil::sixth_order);
DenseOperator discretize(const RealFunction& v, KineticStencil stencil = KineticStencil::sixth_order);

/// H psi on the grid (end samples of psi are ignored, end samples of the
/// result are zero).
ComplexFunction apply_hamiltonian(const DenseOperator& op, const ComplexFunction& psi);

enum class EigenPath { banded_symmetric, general };

struct EigenOptions {
  Index max_dimension = 4096;
  /// Continuum edge used for bound_count.
  std::optional<double> continuum_threshold;
  int inverse_iterations = 3;
};

/// Every eigenvalue of a dense operator, sorted by real part, with a
/// residual |H v - E v| / (|H|_1 |v|) from inverse-iteration refinement and
/// the fraction of |v|^2 in the outer 5% of the grid at each end.
struct SpectralReport {
  std::vector<Complex> eigenvalues;
  std::vector<double> residuals;
  std::vector<double> boundary_mass;  // left + right
  std::vector<double> left_mass;
  std::vector<double> right_mass;
  std::vector<bool> converged;
  double left_potential = 0.0;   // Re V at the first interior node
  double right_potential = 0.0;  // Re V at the last interior node
  double max_imag = 0.0;
  Index bound_count = 0;
  double operator_norm = 0.0;
  EigenPath path = EigenPath::banded_symmetric;
};

/// Box-continuum artifacts: more than this fraction of |psi|^2 at the edges.
inline constexpr double kBoundaryMassCutoff = 0.2;

/// All eigenvalues of `op`.
///
/// Complex-symmetric band operators (everything `discretize` produces) go
/// through Givens band reduction, implicit QL and banded inverse iteration,
/// O(n^2) overall. Anything else falls back to Eigen::ComplexEigenSolver,
/// with residuals from its eigenvectors. Throws std::invalid_argument above
/// `max_dimension`.
SpectralReport eigenvalues_dense(const DenseOperator& op, const EigenOptions& options = {});

/// Eigenvalues with Re E < threshold, excluding converged-false entries and
/// box artifacts: states with more than kBoundaryMassCutoff of their mass in
/// the outer 5% at the open ends. An end is open unless Re V there exceeds
/// the threshold; a potential wall cannot host a truncated continuum, and a
/// genuine bound state may sit right against it.
std::vector<Complex> bound_spectrum(const SpectralReport& report, double threshold);

/// Eigenvector for an eigenvalue estimate by inverse iteration, embedded in
/// the grid with zero end samples, normalised to unit L2 norm with the
/// largest sample real positive.
ComplexFunction eigenvector(const DenseOperator& op, Complex energy, int iterations = 4);

/// |H psi - E psi|_2 / |psi|_2 over the interior nodes.
double eigen_residual(const DenseOperator& op, const ComplexFunction& psi, Complex energy);

/// Gaussians exp(-(x - c)^2 / (2 w^2)) at the given centres.
std::vector<ComplexFunction> gaussian_probes(const Grid1D& grid, const std::vector<double>& centres,
                                             double width);

/// max over probes of |(B H0 - H1 B) p| / |p| and |(H0 A - A H1) p| / |p|,
/// with B = d/dx + beta and A = -d/dx + beta applied by 6th-order central
/// differences (the order of the kinetic stencil).
/// The residual norm skips the few nodes at each end that couple to the
/// pinned end samples; probes are expected to vanish there anyway.
double verify_intertwining(const DenseOperator& op0, const DenseOperator& op1,
                           const SuperPotential& sp, const std::vector<ComplexFunction>& probes);

}  // namespace csusy

#endif  // CSUSY_SPECTRAL_HPP
