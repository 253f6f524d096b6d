#ifndef CSUSY_ANALYSIS_HPP
#define CSUSY_ANALYSIS_HPP

#include "csusy/darboux.hpp"
#include "csusy/numerics.hpp"

#include <optional>
#include <vector>

namespace csusy {

struct ZeroArea {
  double integral = 0.0;       // Simpson quadrature of Im V1
  double boundary_form = 0.0;  // [2 lambda / alpha^2] between the grid ends
};

ZeroArea zero_area(const ComplexPotential& v1);

inline constexpr double kPtTolerance = 1e-6;

struct SymmetryVerdict {
  bool is_pt_symmetric = false;
  double best_shift = 0.0;
  double deviation = 0.0;
};

/// max |V(x0 + s) - conj(V(x0 - s))| over every grid node whose mirror image
/// about x0 stays inside the grid. Off-node mirror images are evaluated by
/// 4-point cubic interpolation.
double pt_deviation(const ComplexFunction& v, double shift);

/// With a shift, evaluates only that centre. Without one, scans a 401-point
/// lattice of centres whose mirror window contains the extrema of Im V (or
/// the minimum of Re V when V is real), refines the best one by
/// golden-section search, and reports the smallest deviation seen.
SymmetryVerdict pt_check(const ComplexFunction& v, std::optional<double> shift = std::nullopt,
                         double tolerance = kPtTolerance);
SymmetryVerdict pt_check(const ComplexPotential& v1, std::optional<double> shift = std::nullopt,
                         double tolerance = kPtTolerance);

enum class Alternation { alternating, not_alternating, not_applicable };

struct InterlacingReport {
  std::vector<double> re_zeros;
  std::vector<double> im_zeros;
  Alternation alternation = Alternation::not_applicable;
};

/// Zeros of Re psi and Im psi inside the region where |psi| > 1e-4 max|psi|.
/// A part whose sup is below 1e-8 of max|psi| is treated as identically zero
/// and the alternation flag is then not_applicable.
InterlacingReport interlacing_report(const MappedState& state);

const char* to_string(Alternation a);

}  // namespace csusy

#endif  // CSUSY_ANALYSIS_HPP
