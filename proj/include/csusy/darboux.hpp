#ifndef CSUSY_DARBOUX_HPP
#define CSUSY_DARBOUX_HPP

#include "csusy/ermakov.hpp"
#include "csusy/numerics.hpp"
#include "csusy/seeds.hpp"

#include <optional>
#include <stdexcept>
#include <string>

namespace csusy {

enum class SuperPotentialForm { nonlinear, canonical };

/// beta(x) defining A = -d/dx + beta and B = d/dx + beta.
struct SuperPotential {
  ComplexFunction beta;
  double epsilon = 0.0;
  SuperPotentialForm form = SuperPotentialForm::nonlinear;
  std::optional<ErmakovParams> params;
};

/// u = a u1 + (b/2 - i lambda/w0) u2 with its derivative and the
/// factorization energy of the seeds it came from.
struct UFunction {
  ComplexFunction u;
  ComplexFunction du;
  double epsilon = 0.0;
};

/// V1 on the grid together with the data it was built from.
struct ComplexPotential {
  ComplexFunction v1;
  RealFunction v0;
  RealFunction alpha;
  double epsilon = 0.0;
  double lambda = 0.0;
  ErmakovParams params;
  std::string provenance;
  /// sup |V1 - V0 - 2 beta'| / max(1, |V1 - V0|) over the interior, measured
  /// at construction.
  double consistency_defect = 0.0;
};

/// Eigenfunction of H1 normalised to unit L2 norm, phase fixed so the
/// sample of largest modulus is real and positive.
struct MappedState {
  ComplexFunction psi;
  double energy = 0.0;
  int index = 0;
};

class NotNormalizable : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// beta = -alpha'/alpha + i lambda/alpha^2.
SuperPotential superpotential_nonlinear(const ErmakovFamily& fam);

/// Throws ConstraintViolation unless (a, b, c, lambda, w0) satisfy the
/// constraint within `constraint_tol`.
UFunction u_function(const SeedPair& seed, const ErmakovParams& params,
                     double constraint_tol = 1e-10);

/// beta = -u'/u using the carried derivative.
SuperPotential superpotential_canonical(const UFunction& u);

/// beta = -u'/u with u' by finite differences. Throws std::domain_error if
/// |u| < 1e-12 anywhere.
SuperPotential superpotential_canonical(const ComplexFunction& u, double epsilon);

/// V1 = V0 - 2 (ln alpha)'' + i (2 lambda/alpha^2)'.
///
/// Evaluated without finite differences: (ln alpha)'' follows from the seeds
/// and their derivatives through u'' = (V0 - eps) u, and the imaginary part is
/// -4 lambda alpha'/alpha^3. The result is certified against V0 + 2 beta'
/// (beta' by derivative6) and std::runtime_error is thrown
/// if the two disagree by more than `consistency_tol`.
ComplexPotential partner_potential(const ErmakovFamily& fam, double consistency_tol = 1e-4);

/// sup over the interior of |-beta' + beta^2 - V0 + eps| / max(|V0 - eps|, 1).
double riccati_residual(const SuperPotential& sp, const RealFunction& v0);

/// psi_{n+1} = (phi' + beta phi) / sqrt(E_n - eps), then normalised.
/// `level` is n, the index of phi in the H0 spectrum. Throws
/// std::invalid_argument if E_n <= eps.
MappedState map_eigenfunction(const ComplexFunction& phi, double energy, const SuperPotential& sp,
                              int level);

/// |psi| at the grid ends, relative to its peak, below which a state counts
/// as decayed on the window.
inline constexpr double kEdgeDecay = 1e-4;

/// psi_0 proportional to 1/u, the state annihilated by A, at energy eps.
/// Throws NotNormalizable unless |1/u| has decayed to kEdgeDecay of its peak
/// at both grid ends.
MappedState missing_state(const UFunction& u);

/// Max pointwise |beta_nonlinear - beta_canonical| over the whole grid.
double superpotential_form_gap(const ErmakovFamily& fam, const UFunction& u);

/// sup ||u|^2 / a - alpha^2| / alpha^2. Expanding |u|^2 with the constraint
/// gives a (a u1^2 + b u1 u2 + c u2^2), so the factorization is alpha^2 = |u|^2 / a.
double factorization_defect(const ErmakovFamily& fam, const UFunction& u);

/// Normalise to unit L2 norm and rotate so the largest-modulus sample is
/// real positive.
void normalize_state(ComplexFunction& psi);

}  // namespace csusy

#endif  // CSUSY_DARBOUX_HPP
