#include "csusy/ermakov.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace csusy {

double solve_constraint(double a, double c, double lambda, double w0, RootBranch branch) {
  if (!(a > 0.0) || !(c > 0.0)) throw std::invalid_argument("constraint needs a > 0 and c > 0");
  if (w0 == 0.0 || !std::isfinite(w0)) throw std::invalid_argument("constraint needs w0 != 0");
  const double ratio = lambda / w0;
  double radicand = a * c - ratio * ratio;
  // Parameter sets on the boundary (b = 0 exactly) land here with a few ulps
  // of either sign.
  if (std::abs(radicand) <= 1e-13 * a * c) radicand = 0.0;
  if (radicand < 0.0) {
    std::ostringstream msg;
    msg << "infeasible constraint b^2 - 4ac = -4 lambda^2/w0^2: a c = " << a * c
        << " < lambda^2/w0^2 = " << ratio * ratio;
    throw InfeasibleConstraint(msg.str());
  }
  const double b = 2.0 * std::sqrt(radicand);
  return branch == RootBranch::positive ? b : -b;
}

double constraint_defect(const ErmakovParams& p, double w0) {
  const double ratio = p.lambda / w0;
  return p.b * p.b - 4.0 * p.a * p.c + 4.0 * ratio * ratio;
}

void check_constraint(const ErmakovParams& p, double w0, double tol) {
  const double defect = constraint_defect(p, w0);
  if (!(std::abs(defect) <= tol * std::max(1.0, 4.0 * p.a * p.c))) {
    std::ostringstream msg;
    msg << "constraint b^2 - 4ac = -4 lambda^2/w0^2 violated: b^2 - 4ac + 4 lambda^2/w0^2 = "
        << defect << " (a=" << p.a << ", b=" << p.b << ", c=" << p.c << ", lambda=" << p.lambda
        << ", w0=" << w0 << ")";
    throw ConstraintViolation(msg.str());
  }
}

ErmakovFamily build_alpha(const SeedPair& seed, const ErmakovParams& params, double constraint_tol) {
  if (!(params.a > 0.0) || !(params.c > 0.0)) {
    throw std::invalid_argument("Ermakov family needs a > 0 and c > 0");
  }
  check_constraint(params, seed.w0, constraint_tol);

  const Grid1D& g = seed.grid();
  const double scale_re = std::max(seed.u1.values.real().cwiseAbs().maxCoeff(),
                                   seed.u2.values.real().cwiseAbs().maxCoeff());
  const double scale_im = std::max(seed.u1.values.imag().cwiseAbs().maxCoeff(),
                                   seed.u2.values.imag().cwiseAbs().maxCoeff());
  if (scale_im > 1e-12 * scale_re) {
    throw std::invalid_argument("Ermakov family needs a real seed basis");
  }

  const Eigen::ArrayXd u1 = seed.u1.values.real().array();
  const Eigen::ArrayXd u2 = seed.u2.values.real().array();
  const Eigen::ArrayXd d1 = seed.du1.values.real().array();
  const Eigen::ArrayXd d2 = seed.du2.values.real().array();
  const auto [a, b, c, lambda] = params;

  const Eigen::ArrayXd radicand = a * u1.square() + b * u1 * u2 + c * u2.square();
  for (Index i = 0; i < g.n; ++i) {
    if (!(radicand[i] > 0.0) || !std::isfinite(radicand[i])) {
      std::ostringstream msg;
      msg << "alpha^2 = a u1^2 + b u1 u2 + c u2^2 is not positive at x = " << g.x(i) << " (value "
          << radicand[i] << ")";
      throw PositivityError(msg.str(), g.x(i));
    }
  }
  const Eigen::ArrayXd alpha = radicand.sqrt();
  const Eigen::ArrayXd half_d_radicand = a * u1 * d1 + 0.5 * b * (d1 * u2 + u1 * d2) + c * u2 * d2;

  ErmakovFamily fam;
  fam.params = params;
  fam.seed = seed;
  fam.alpha = {g, alpha.matrix()};
  fam.dalpha = {g, (half_d_radicand / alpha).matrix()};
  return fam;
}

double ermakov_residual(const ErmakovFamily& fam) {
  const Grid1D& g = fam.grid();
  const Eigen::ArrayXd alpha = fam.alpha.values.array();
  const Eigen::ArrayXd log_d = fam.dalpha.values.array() / alpha;
  const Eigen::ArrayXd log_dd = derivative(RealFunction{g, log_d.matrix()}, 1).values.array();
  const Eigen::ArrayXd alpha_dd = alpha * (log_dd + log_d.square());

  // The quadratic form under the constraint solves -alpha'' + V0 alpha =
  // eps alpha - lambda^2/alpha^3; the opposite sign on the lambda term is
  // incompatible with beta = -alpha'/alpha + i lambda/alpha^2.
  const double eps = fam.epsilon();
  const double lam2 = fam.params.lambda * fam.params.lambda;
  const Eigen::ArrayXd v0 = fam.seed.v0.values.array();
  const Eigen::ArrayXd res = -alpha_dd + (v0 - eps) * alpha + lam2 / alpha.cube();
  const Eigen::ArrayXd norm = (std::abs(eps) * alpha).max(1.0);

  const IndexRange r = interior(g);
  return (res / norm).abs().segment(r.begin, r.size()).maxCoeff();
}

}  // namespace csusy
