// Independent reference values for the tests. Nothing here calls the
// library: closed forms are written out by hand, and series are summed in
// long double.
#ifndef CSUSY_TESTS_ORACLES_HPP
#define CSUSY_TESTS_ORACLES_HPP

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace oracle {

/// Brute-force 1F1 series, `terms` terms in long double.
inline double kummer_series(double a, double b, double z, int terms = 400) {
  long double term = 1.0L, sum = 1.0L;
  for (int s = 0; s < terms; ++s) {
    term *= (static_cast<long double>(a) + s) / ((static_cast<long double>(b) + s) * (s + 1)) * z;
    sum += term;
    if (std::fabs(term) < 1e-24L * std::fabs(sum)) break;
  }
  return static_cast<double>(sum);
}

/// Free particle with u1 = e^{-kx/2}, u2 = e^{kx/2}: F = alpha^2
/// = a e^{-kx} + b + c e^{kx}.
struct FreeParticle {
  double kappa, a, b, c, lambda;

  double F(double x) const { return a * std::exp(-kappa * x) + b + c * std::exp(kappa * x); }
  double dF(double x) const { return kappa * (-a * std::exp(-kappa * x) + c * std::exp(kappa * x)); }
  double d2F(double x) const { return kappa * kappa * (a * std::exp(-kappa * x) + c * std::exp(kappa * x)); }

  double alpha(double x) const { return std::sqrt(F(x)); }
  std::complex<double> beta(double x) const { return {-0.5 * dF(x) / F(x), lambda / F(x)}; }
  double re_v1(double x) const {
    const double r = dF(x) / F(x);
    return -(d2F(x) / F(x) - r * r);
  }
  double im_v1(double x) const { return -2.0 * lambda * dF(x) / (F(x) * F(x)); }
  /// u = a u1 + (b/2 - i lambda/kappa) u2.
  std::complex<double> u(double x) const {
    return a * std::exp(-kappa * x / 2) + std::complex<double>(b / 2, -lambda / kappa) * std::exp(kappa * x / 2);
  }
};

/// Morse levels Gamma0 - gamma^2 (sqrt(Gamma0)/gamma - n - 1/2)^2.
inline std::vector<double> morse_levels(double gamma, double gamma0) {
  std::vector<double> out;
  const double s = std::sqrt(gamma0) / gamma;
  for (int n = 0; s - n - 0.5 > 0; ++n) out.push_back(gamma0 - gamma * gamma * (s - n - 0.5) * (s - n - 0.5));
  return out;
}

inline double box_level(int n, double length) {
  const double k = n * std::numbers::pi / length;
  return k * k;
}

inline double harmonic_level(int n) { return 2.0 * n + 1.0; }

}  // namespace oracle

#endif
