#include "csusy/kummer.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

namespace csusy {
namespace {

bool is_nonpositive_integer(double v) { return v <= 0.0 && std::nearbyint(v) == v; }

// Neumaier's variant of Kahan summation.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double t) {
    const double s = sum + t;
    if (std::abs(sum) >= std::abs(t)) {
      carry += (sum - s) + t;
    } else {
      carry += (t - s) + sum;
    }
    sum = s;
  }
  double value() const { return sum + carry; }
};

double reciprocal_gamma(double v) {
  if (is_nonpositive_integer(v)) return 0.0;
  return 1.0 / std::tgamma(v);
}

double series(double a, double b, double z) {
  constexpr int kMaxTerms = 20000;
  CompensatedSum acc;
  double term = 1.0;
  acc.add(term);
  for (int k = 0; k < kMaxTerms; ++k) {
    const double kk = static_cast<double>(k);
    term *= (a + kk) / (b + kk) * z / (kk + 1.0);
    acc.add(term);
    if (term == 0.0) return acc.value();
    // Only stop once terms are shrinking for good.
    const bool past_peak = kk + 1.0 > std::abs(z) && kk > std::abs(a) && kk > std::abs(b);
    if (past_peak && std::abs(term) <= 1e-17 * std::abs(acc.value())) return acc.value();
    if (!std::isfinite(acc.value())) {
      throw std::overflow_error("kummer_m: series overflow at z = " + std::to_string(z));
    }
  }
  throw std::runtime_error("kummer_m: series did not converge for z = " + std::to_string(z));
}

// Sum of an asymptotic series truncated before its smallest term.
// Returns nullopt unless the smallest term is below `tol` of the sum.
std::optional<double> asymptotic_sum(double p, double q, double inv_z, double tol) {
  double term = 1.0;
  double sum = 1.0;
  double prev = std::numeric_limits<double>::infinity();
  for (int s = 0; s < 500; ++s) {
    const double ss = static_cast<double>(s);
    const double next = term * (p + ss) * (q + ss) / (ss + 1.0) * inv_z;
    if (next == 0.0) return sum;
    if (std::abs(next) >= prev && s > 1) break;
    if (std::abs(next) <= tol * std::abs(sum)) return sum + next;
    prev = std::abs(next);
    term = next;
    sum += term;
  }
  return std::nullopt;
}

std::optional<double> large_z(double a, double b, double z) {
  constexpr double kTol = 1e-13;
  const double inv_z = 1.0 / z;
  const auto s1 = asymptotic_sum(1.0 - a, b - a, inv_z, kTol);
  const auto s2 = asymptotic_sum(a, a - b + 1.0, -inv_z, kTol);
  if (!s1 || !s2) return std::nullopt;

  const double log_dominant = z + (a - b) * std::log(z);
  if (log_dominant > std::log(std::numeric_limits<double>::max()) - 50.0) {
    throw std::overflow_error("kummer_m: result overflows for z = " + std::to_string(z));
  }
  const double gamma_b = std::tgamma(b);
  const double dominant = reciprocal_gamma(a) * std::exp(log_dominant) * *s1;
  const double recessive =
      std::cos(std::numbers::pi * a) * std::pow(z, -a) * reciprocal_gamma(b - a) * *s2;
  return gamma_b * (dominant + recessive);
}

double positive_argument(double a, double b, double z) {
  if (z > kKummerCrossover) {
    if (auto v = large_z(a, b, z)) return *v;
  }
  return series(a, b, z);
}

}  // namespace

double kummer_m(double a, double b, double z) {
  if (is_nonpositive_integer(b)) {
    throw std::domain_error("kummer_m: b must not be a non-positive integer, got " +
                            std::to_string(b));
  }
  if (!std::isfinite(z) || !std::isfinite(a) || !std::isfinite(b)) {
    throw std::domain_error("kummer_m: arguments must be finite");
  }
  if (z == 0.0) return 1.0;

  double result = 0.0;
  if (is_nonpositive_integer(a)) {
    // Terminating polynomial of degree -a.
    CompensatedSum acc;
    double term = 1.0;
    acc.add(term);
    const int degree = static_cast<int>(-a);
    for (int k = 0; k < degree; ++k) {
      const double kk = static_cast<double>(k);
      term *= (a + kk) / (b + kk) * z / (kk + 1.0);
      acc.add(term);
    }
    result = acc.value();
  } else if (a == b) {
    result = std::exp(z);
  } else if (z > 0.0) {
    result = positive_argument(a, b, z);
  } else {
    result = std::exp(z) * positive_argument(b - a, b, -z);
  }
  if (!std::isfinite(result)) {
    throw std::overflow_error("kummer_m: result not representable for z = " + std::to_string(z));
  }
  return result;
}

double kummer_m_dz(double a, double b, double z) { return a / b * kummer_m(a + 1.0, b + 1.0, z); }

}  // namespace csusy
