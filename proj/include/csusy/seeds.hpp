#ifndef CSUSY_SEEDS_HPP
#define CSUSY_SEEDS_HPP

#include "csusy/numerics.hpp"

#include <utility>
#include <vector>

namespace csusy {

/// Two solutions of -u'' + V0 u = eps u sampled with their derivatives.
///
/// The Wronskian convention is W = u1 u2' - u1' u2 and every builder
/// returns w0 > 0 (swapping u1 and u2 when needed).
struct SeedPair {
  ComplexFunction u1;
  ComplexFunction u2;
  ComplexFunction du1;
  ComplexFunction du2;
  double w0 = 0.0;
  double epsilon = 0.0;
  RealFunction v0;

  const Grid1D& grid() const { return u1.grid; }
};

/// W(x) = u1 u2' - u1' u2 from the carried derivative samples.
ComplexFunction wronskian(const SeedPair& seed);

/// max |W(x) - w0| / |w0| over `range`.
double wronskian_deviation(const SeedPair& seed, IndexRange range);

/// Wronskian of two arbitrary sampled functions, derivatives by finite
/// differences.
ComplexFunction wronskian_fd(const ComplexFunction& f, const ComplexFunction& g);

/// sup |-u'' + V0 u - eps u| / sup |u| over the central 90% of the grid,
/// with u'' obtained by differencing the carried derivative `du`.
double schrodinger_residual(const ComplexFunction& u, const ComplexFunction& du,
                            const RealFunction& v0, double epsilon);

/// Same check with u'' taken as the second difference of the samples.
double schrodinger_residual(const ComplexFunction& u, const RealFunction& v0, double epsilon);

/// u1 = e^{-kappa x/2}, u2 = e^{+kappa x/2}, eps = -kappa^2/4, w0 = kappa,
/// V0 = 0. This is the real exponential basis obtained from e^{+-ikx} with
/// k = i kappa/2.
SeedPair free_particle_seeds(double kappa, const Grid1D& grid);

/// Relative size a bound state is allowed at the window edges. Edge values
/// feed the Dirichlet truncation error of every discrete residual at 1/h^2.
inline constexpr double kDomainDecay = 1e-8;

/// Symmetric window [-L, L] on which e^{-kappa |x| / 2} has decayed to `decay`.
std::pair<double, double> free_particle_domain(double kappa, double decay = kDomainDecay);

/// Morse potential V0(x) = gamma0 (1 - e^{-gamma x})^2.
struct MorseParams {
  double gamma = 1.0;
  double gamma0 = 4.0;

  /// Throws std::invalid_argument unless gamma > 0, gamma0 > 0 and
  /// gamma0 > gamma^2 / 2.
  void validate() const;
  double d() const;
  double sigma(double epsilon) const;
  double y(double x) const;
  double potential(double x) const;
};

/// y = 60 at the left edge: the missing state 1/u must be negligible there.
inline constexpr double kMorseWallY = 60.0;

/// Window [x_min, x_max] for the Morse examples. x_min puts y at `wall_y`;
/// x_max lets the slowest decaying state (among the bound levels and eps)
/// fall to `decay` past the well at y = 1.
std::pair<double, double> morse_domain(const MorseParams& params, double epsilon,
                                       double wall_y = kMorseWallY, double decay = kDomainDecay);

/// Closed-form seeds in terms of 1F1, with y = 2 d e^{-gamma x}:
///   u1 = e^{-y/2} y^{sigma}  M(sigma + 1/2 - d, 1 + 2 sigma, y)
///   u2 = e^{-y/2} y^{-sigma} M(-sigma + 1/2 - d, 1 - 2 sigma, y)
/// and w0 = 2 sqrt(gamma0 - eps).
/// Throws std::invalid_argument for eps >= gamma0, std::overflow_error when
/// the grid pushes y past the representable range.
SeedPair morse_seeds(const MorseParams& params, double epsilon, const Grid1D& grid);

/// E_n = gamma [(2n+1) sqrt(gamma0) - gamma (n+1/2)^2], n = 0..N,
/// N = floor(sqrt(gamma0)/gamma - 1/2).
std::vector<double> morse_levels(const MorseParams& params);

/// Seeds for sampled V0 by fixed-step RK4 on (u, u').
///
/// One solution is integrated left to right from (u, u') = (1, +k) at
/// x_min, the other right to left from (1, -k) at x_max, with
/// k = sqrt(max(V0(edge) - eps, 0)); each grows in its own sweep direction.
/// V0 at half steps comes from 4-point cubic interpolation. Each solution is
/// scaled to 1 at the centre node (unless it vanishes there), the
/// pair ordered so that W > 0, and w0 is the Wronskian at the centre.
///
/// Throws std::overflow_error with the blow-up coordinate, and
/// std::runtime_error when the two sweeps are linearly dependent.
SeedPair numerical_seeds(const RealFunction& v0, double epsilon);

}  // namespace csusy

#endif  // CSUSY_SEEDS_HPP
