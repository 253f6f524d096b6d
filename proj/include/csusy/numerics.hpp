#ifndef CSUSY_NUMERICS_HPP
#define CSUSY_NUMERICS_HPP

#include <Eigen/Dense>

#include <complex>
#include <type_traits>
#include <vector>

namespace csusy {

using Index = Eigen::Index;
using Complex = std::complex<double>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Uniform sampling of [x_min, x_max] with n points, x_i = x_min + i*h.
struct Grid1D {
  double x_min = 0.0;
  double x_max = 1.0;
  Index n = 16;

  double h() const { return (x_max - x_min) / static_cast<double>(n - 1); }
  double x(Index i) const { return x_min + static_cast<double>(i) * h(); }
  Eigen::VectorXd points() const;

  bool operator==(const Grid1D&) const = default;
};

/// Throws std::invalid_argument on non-finite bounds, x_min >= x_max or n < 16.
Grid1D make_grid(double x_min, double x_max, Index n);

/// Samples of a scalar field on a grid. `truncated` marks deliberately
/// non-finite entries (e.g. overflowed tails).
template <typename Scalar>
struct GridFunction {
  Grid1D grid;
  Vector<Scalar> values;
  bool truncated = false;

  GridFunction() = default;
  GridFunction(const Grid1D& g, Vector<Scalar> v, bool trunc = false)
      : grid(g), values(std::move(v)), truncated(trunc) {}

  Index size() const { return values.size(); }
  Scalar operator[](Index i) const { return values[i]; }
  bool all_finite() const { return values.allFinite(); }
};

using RealFunction = GridFunction<double>;
using ComplexFunction = GridFunction<Complex>;

template <typename Scalar, typename F>
GridFunction<Scalar> sample(const Grid1D& grid, F&& f) {
  Vector<Scalar> v(grid.n);
  for (Index i = 0; i < grid.n; ++i) v[i] = static_cast<Scalar>(f(grid.x(i)));
  return {grid, std::move(v)};
}

RealFunction real_part(const ComplexFunction& f);
RealFunction imag_part(const ComplexFunction& f);
ComplexFunction to_complex(const RealFunction& f);

/// Finite-difference derivative of order 1 or 2.
///
/// Every stencil is 4th-order accurate:
///   order 1, interior: (f[i-2] - 8 f[i-1] + 8 f[i+1] - f[i+2]) / 12h
///   order 1, i=0 / i=1: forward 5-point stencils
///     (-25, 48, -36, 16, -3)/12h and (-3, -10, 18, -6, 1)/12h,
///     mirrored with a sign flip at the right end.
///   order 2, interior: (-f[i-2] + 16 f[i-1] - 30 f[i] + 16 f[i+1] - f[i+2]) / 12h^2
///   order 2, i=0 / i=1: forward 6-point stencils
///     (45, -154, 214, -156, 61, -10)/12h^2 and (10, -15, -4, 14, -6, 1)/12h^2,
///     mirrored at the right end.
/// Throws std::invalid_argument for any other order or a size mismatch.
template <typename Scalar>
GridFunction<Scalar> derivative(const GridFunction<Scalar>& f, int order);

/// First derivative with the 6th-order central stencil
///   (45 (f[i+1] - f[i-1]) - 9 (f[i+2] - f[i-2]) + (f[i+3] - f[i-3])) / 60h
/// in the interior; the three nodes at each end fall back to derivative().
template <typename Scalar>
GridFunction<Scalar> derivative6(const GridFunction<Scalar>& f);

/// Composite Simpson rule. For an even point count the last three intervals
/// use Simpson's 3/8 rule, so the error stays O(h^4).
template <typename Scalar>
Scalar integrate(const GridFunction<Scalar>& f);

/// Sign-change locations by linear interpolation, ascending. Exact grid
/// zeros are reported once; crossings closer than h/2 are merged into
/// their midpoint.
std::vector<double> find_real_zeros(const RealFunction& f);

/// Half-open index range [begin, end).
struct IndexRange {
  Index begin = 0;
  Index end = 0;
  Index size() const { return end - begin; }
};

/// Central `fraction` of the grid, the region residual norms are taken over.
IndexRange interior(const Grid1D& grid, double fraction = 0.9);

/// Relative sup-norm helpers used by the residual checks.
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& v, IndexRange r) {
  return v.segment(r.begin, r.size()).cwiseAbs().maxCoeff();
}

}  // namespace csusy

#endif  // CSUSY_NUMERICS_HPP
