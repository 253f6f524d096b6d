#ifndef CSUSY_KUMMER_HPP
#define CSUSY_KUMMER_HPP

namespace csusy {

/// |z| above which the large-argument expansion is tried before the series.
inline constexpr double kKummerCrossover = 30.0;

/// Confluent hypergeometric function 1F1(a; b; z) (Kummer's M) for real
/// arguments.
///
/// Strategy:
///  - a a non-positive integer: the terminating polynomial.
///  - z < 0: Kummer's transformation M(a,b,z) = e^z M(b-a, b, -z), so the
///    series or expansion below only ever sees a positive argument and no
///    alternating cancellation.
///  - 0 < z <= 30: power series with term recurrence and Neumaier
///    (compensated) summation.
///  - z > 30: the large-z expansion
///      Gamma(b) [ e^z z^(a-b) / Gamma(a) * sum (1-a)_s (b-a)_s / s! z^-s
///               + cos(pi a) z^-a / Gamma(b-a) * sum (a)_s (a-b+1)_s / s! (-z)^-s ]
///    truncated at its smallest term; if that term is not below 1e-13 of
///    the sum, the power series is used instead.
///
/// Throws std::domain_error when b is a non-positive integer or z is not
/// finite, std::overflow_error when the result is not representable.
double kummer_m(double a, double b, double z);

/// d/dz M(a,b,z) = (a/b) M(a+1, b+1, z).
double kummer_m_dz(double a, double b, double z);

}  // namespace csusy

#endif  // CSUSY_KUMMER_HPP
