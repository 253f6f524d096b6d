#ifndef CSUSY_ERMAKOV_HPP
#define CSUSY_ERMAKOV_HPP

#include "csusy/numerics.hpp"
#include "csusy/seeds.hpp"

#include <stdexcept>

namespace csusy {

/// Coefficients of alpha^2 = a u1^2 + b u1 u2 + c u2^2 and the strength
/// lambda of the imaginary part of the superpotential.
struct ErmakovParams {
  double a = 1.0;
  double b = 0.0;
  double c = 1.0;
  double lambda = 0.0;

  bool operator==(const ErmakovParams&) const = default;
};

/// Raised when a c < lambda^2 / w0^2: no real b satisfies the constraint.
class InfeasibleConstraint : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when the constraint b^2 - 4ac = -4 lambda^2 / w0^2 is violated.
class ConstraintViolation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when the radicand of alpha is not positive at some grid point.
class PositivityError : public std::domain_error {
 public:
  PositivityError(const std::string& what, double x) : std::domain_error(what), x_(x) {}
  double x() const { return x_; }

 private:
  double x_;
};

enum class RootBranch { positive, negative };

/// b = +-2 sqrt(a c - lambda^2 / w0^2). A radicand within 1e-13 a c of zero
/// is taken as zero.
double solve_constraint(double a, double c, double lambda, double w0,
                        RootBranch branch = RootBranch::positive);

/// b^2 - 4ac + 4 lambda^2 / w0^2; zero when the constraint holds.
double constraint_defect(const ErmakovParams& p, double w0);

/// Throws ConstraintViolation unless |defect| <= tol * max(1, 4ac).
void check_constraint(const ErmakovParams& p, double w0, double tol);

/// Nodeless Ermakov solution built from a seed pair. `dalpha` is assembled
/// from the seed derivatives:
///   alpha' = (a u1 u1' + (b/2)(u1' u2 + u1 u2') + c u2 u2') / alpha.
struct ErmakovFamily {
  ErmakovParams params;
  SeedPair seed;
  RealFunction alpha;
  RealFunction dalpha;

  const Grid1D& grid() const { return alpha.grid; }
  double epsilon() const { return seed.epsilon; }
  double w0() const { return seed.w0; }
};

/// Requires a > 0, c > 0, the constraint within `constraint_tol` and real
/// seeds. Throws std::invalid_argument, ConstraintViolation or
/// PositivityError (with the offending coordinate).
ErmakovFamily build_alpha(const SeedPair& seed, const ErmakovParams& params,
                          double constraint_tol = 1e-10);

/// sup over the interior of |-alpha'' + V0 alpha - eps alpha + lambda^2/alpha^3|
/// / max(|eps alpha|, 1), pointwise normalised. alpha'' is recovered from the
/// log-derivative: alpha'' = alpha ((ln alpha)'' + (ln alpha)'^2), with
/// (ln alpha)'' differenced numerically.
double ermakov_residual(const ErmakovFamily& fam);

}  // namespace csusy

#endif  // CSUSY_ERMAKOV_HPP
