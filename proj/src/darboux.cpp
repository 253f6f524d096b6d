#include "csusy/darboux.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace csusy {

SuperPotential superpotential_nonlinear(const ErmakovFamily& fam) {
  const Eigen::ArrayXd alpha = fam.alpha.values.array();
  const Eigen::ArrayXd re = -fam.dalpha.values.array() / alpha;
  const Eigen::ArrayXd im = fam.params.lambda / alpha.square();

  SuperPotential sp;
  sp.beta = {fam.grid(), Vector<Complex>(fam.grid().n)};
  sp.beta.values.real() = re.matrix();
  sp.beta.values.imag() = im.matrix();
  sp.epsilon = fam.epsilon();
  sp.form = SuperPotentialForm::nonlinear;
  sp.params = fam.params;
  return sp;
}

UFunction u_function(const SeedPair& seed, const ErmakovParams& params, double constraint_tol) {
  check_constraint(params, seed.w0, constraint_tol);
  const Complex coeff(0.5 * params.b, -params.lambda / seed.w0);
  UFunction u;
  u.u = {seed.grid(), params.a * seed.u1.values + coeff * seed.u2.values};
  u.du = {seed.grid(), params.a * seed.du1.values + coeff * seed.du2.values};
  u.epsilon = seed.epsilon;
  return u;
}

namespace {

void require_nodeless(const ComplexFunction& u) {
  for (Index i = 0; i < u.size(); ++i) {
    if (std::abs(u[i]) < 1e-12) {
      std::ostringstream msg;
      msg << "u vanishes at x = " << u.grid.x(i) << "; -u'/u is singular there";
      throw std::domain_error(msg.str());
    }
  }
}

}  // namespace

SuperPotential superpotential_canonical(const UFunction& u) {
  require_nodeless(u.u);
  SuperPotential sp;
  sp.beta = {u.u.grid, -u.du.values.cwiseQuotient(u.u.values)};
  sp.epsilon = u.epsilon;
  sp.form = SuperPotentialForm::canonical;
  return sp;
}

SuperPotential superpotential_canonical(const ComplexFunction& u, double epsilon) {
  require_nodeless(u);
  SuperPotential sp;
  sp.beta = {u.grid, -derivative(u, 1).values.cwiseQuotient(u.values)};
  sp.epsilon = epsilon;
  sp.form = SuperPotentialForm::canonical;
  return sp;
}

ComplexPotential partner_potential(const ErmakovFamily& fam, double consistency_tol) {
  const Grid1D& g = fam.grid();
  const Eigen::ArrayXd alpha = fam.alpha.values.array();
  const Eigen::ArrayXd log_d = fam.dalpha.values.array() / alpha;
  const double lambda = fam.params.lambda;

  // (ln alpha)'' in closed form from u'' = (V0 - eps) u:
  // (ln alpha)'' = (a u1'^2 + b u1'u2' + c u2'^2) / alpha^2 + V0 - eps - 2 (alpha'/alpha)^2.
  const ErmakovParams& p = fam.params;
  const Eigen::ArrayXd du1 = fam.seed.du1.values.real().array();
  const Eigen::ArrayXd du2 = fam.seed.du2.values.real().array();
  const Eigen::ArrayXd grad = p.a * du1.square() + p.b * du1 * du2 + p.c * du2.square();
  const Eigen::ArrayXd log_dd =
      grad / alpha.square() + (fam.seed.v0.values.array() - fam.epsilon()) - 2.0 * log_d.square();

  ComplexPotential cp;
  cp.v0 = fam.seed.v0;
  cp.v1 = {g, Vector<Complex>(g.n)};
  cp.v1.values.real() = (fam.seed.v0.values.array() - 2.0 * log_dd).matrix();
  cp.v1.values.imag() = (-4.0 * lambda * log_d / alpha.square()).matrix();
  cp.alpha = fam.alpha;
  cp.epsilon = fam.epsilon();
  cp.lambda = lambda;
  cp.params = fam.params;
  cp.provenance = "ermakov";

  const SuperPotential sp = superpotential_nonlinear(fam);
  const ComplexFunction dbeta = derivative6(sp.beta);
  const Vector<Complex> shift = cp.v1.values - cp.v0.values.cast<Complex>();
  const Eigen::ArrayXd defect =
      (shift - 2.0 * dbeta.values).array().abs() / shift.array().abs().max(1.0);
  const IndexRange r = interior(g);
  cp.consistency_defect = defect.segment(r.begin, r.size()).maxCoeff();
  if (!(cp.consistency_defect <= consistency_tol)) {
    std::ostringstream msg;
    msg << "partner potential fails V1 = V0 + 2 beta': defect " << cp.consistency_defect << " > "
        << consistency_tol;
    throw std::runtime_error(msg.str());
  }
  return cp;
}

double riccati_residual(const SuperPotential& sp, const RealFunction& v0) {
  const ComplexFunction dbeta = derivative(sp.beta, 1);
  const Eigen::ArrayXd shifted = v0.values.array() - sp.epsilon;
  const Eigen::ArrayXd res =
      (-dbeta.values.array() + sp.beta.values.array().square() - shifted.cast<Complex>()).abs();
  const Eigen::ArrayXd norm = shifted.abs().max(1.0);
  const IndexRange r = interior(sp.beta.grid);
  return (res / norm).segment(r.begin, r.size()).maxCoeff();
}

void normalize_state(ComplexFunction& psi) {
  const double mass = integrate(RealFunction{psi.grid, psi.values.cwiseAbs2()});
  Index peak = 0;
  psi.values.cwiseAbs().maxCoeff(&peak);
  const Complex phase = std::conj(psi[peak]) / std::abs(psi[peak]);
  psi.values *= phase / std::sqrt(mass);
}

MappedState map_eigenfunction(const ComplexFunction& phi, double energy, const SuperPotential& sp,
                              int level) {
  if (!(energy > sp.epsilon)) {
    std::ostringstream msg;
    msg << "map_eigenfunction needs E_n > eps, got E_n = " << energy << ", eps = " << sp.epsilon;
    throw std::invalid_argument(msg.str());
  }
  const ComplexFunction dphi = derivative(phi, 1);
  MappedState st;
  st.psi = {phi.grid,
            (dphi.values + sp.beta.values.cwiseProduct(phi.values)) / std::sqrt(energy - sp.epsilon)};
  normalize_state(st.psi);
  st.energy = energy;
  st.index = level + 1;
  return st;
}

MappedState missing_state(const UFunction& u) {
  require_nodeless(u.u);
  const Grid1D& g = u.u.grid;
  MappedState st;
  st.psi = {g, u.u.values.cwiseInverse()};
  const Eigen::ArrayXd modulus = st.psi.values.cwiseAbs().array();
  const double edge = std::max(modulus[0], modulus[g.n - 1]) / modulus.maxCoeff();
  if (!(edge <= kEdgeDecay)) {
    std::ostringstream msg;
    msg << "missing state 1/u is not normalisable on this window: |1/u| at the grid ends is "
        << edge << " of its peak";
    throw NotNormalizable(msg.str());
  }
  normalize_state(st.psi);
  st.energy = u.epsilon;
  st.index = 0;
  return st;
}

double superpotential_form_gap(const ErmakovFamily& fam, const UFunction& u) {
  const SuperPotential nonlinear = superpotential_nonlinear(fam);
  const SuperPotential canonical = superpotential_canonical(u);
  return (nonlinear.beta.values - canonical.beta.values).cwiseAbs().maxCoeff();
}

double factorization_defect(const ErmakovFamily& fam, const UFunction& u) {
  const Eigen::ArrayXd alpha2 = fam.alpha.values.array().square();
  return ((u.u.values.array().abs2() / fam.params.a - alpha2).abs() / alpha2).maxCoeff();
}

}  // namespace csusy
