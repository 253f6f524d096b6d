#include "csusy/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace csusy {

Eigen::VectorXd Grid1D::points() const {
  Eigen::VectorXd p(n);
  for (Index i = 0; i < n; ++i) p[i] = x(i);
  return p;
}

Grid1D make_grid(double x_min, double x_max, Index n) {
  if (!std::isfinite(x_min) || !std::isfinite(x_max)) {
    throw std::invalid_argument("grid bounds must be finite");
  }
  if (!(x_min < x_max)) {
    throw std::invalid_argument("grid requires x_min < x_max, got [" + std::to_string(x_min) +
                                ", " + std::to_string(x_max) + "]");
  }
  if (n < 16) {
    throw std::invalid_argument("grid requires at least 16 points, got " + std::to_string(n));
  }
  return Grid1D{x_min, x_max, n};
}

RealFunction real_part(const ComplexFunction& f) { return {f.grid, f.values.real(), f.truncated}; }
RealFunction imag_part(const ComplexFunction& f) { return {f.grid, f.values.imag(), f.truncated}; }
ComplexFunction to_complex(const RealFunction& f) {
  return {f.grid, f.values.cast<Complex>(), f.truncated};
}

template <typename Scalar>
GridFunction<Scalar> derivative(const GridFunction<Scalar>& f, int order) {
  const Index n = f.grid.n;
  if (f.values.size() != n) throw std::invalid_argument("grid function size does not match grid");
  if (n < 6) throw std::invalid_argument("derivative needs at least 6 samples");
  const auto& v = f.values;
  Vector<Scalar> d(n);
  const double h = f.grid.h();

  if (order == 1) {
    const double s = 1.0 / (12.0 * h);
    for (Index i = 2; i < n - 2; ++i) d[i] = s * (v[i - 2] - 8.0 * v[i - 1] + 8.0 * v[i + 1] - v[i + 2]);
    d[0] = s * (-25.0 * v[0] + 48.0 * v[1] - 36.0 * v[2] + 16.0 * v[3] - 3.0 * v[4]);
    d[1] = s * (-3.0 * v[0] - 10.0 * v[1] + 18.0 * v[2] - 6.0 * v[3] + v[4]);
    d[n - 1] = -s * (-25.0 * v[n - 1] + 48.0 * v[n - 2] - 36.0 * v[n - 3] + 16.0 * v[n - 4] -
                     3.0 * v[n - 5]);
    d[n - 2] = -s * (-3.0 * v[n - 1] - 10.0 * v[n - 2] + 18.0 * v[n - 3] - 6.0 * v[n - 4] + v[n - 5]);
  } else if (order == 2) {
    const double s = 1.0 / (12.0 * h * h);
    for (Index i = 2; i < n - 2; ++i) {
      d[i] = s * (-v[i - 2] + 16.0 * v[i - 1] - 30.0 * v[i] + 16.0 * v[i + 1] - v[i + 2]);
    }
    d[0] = s * (45.0 * v[0] - 154.0 * v[1] + 214.0 * v[2] - 156.0 * v[3] + 61.0 * v[4] - 10.0 * v[5]);
    d[1] = s * (10.0 * v[0] - 15.0 * v[1] - 4.0 * v[2] + 14.0 * v[3] - 6.0 * v[4] + v[5]);
    d[n - 1] = s * (45.0 * v[n - 1] - 154.0 * v[n - 2] + 214.0 * v[n - 3] - 156.0 * v[n - 4] +
                    61.0 * v[n - 5] - 10.0 * v[n - 6]);
    d[n - 2] = s * (10.0 * v[n - 1] - 15.0 * v[n - 2] - 4.0 * v[n - 3] + 14.0 * v[n - 4] -
                    6.0 * v[n - 5] + v[n - 6]);
  } else {
    throw std::invalid_argument("derivative order must be 1 or 2, got " + std::to_string(order));
  }
  return {f.grid, std::move(d), f.truncated};
}

template <typename Scalar>
Scalar integrate(const GridFunction<Scalar>& f) {
  const Index n = f.values.size();
  if (n != f.grid.n) throw std::invalid_argument("grid function size does not match grid");
  const auto& v = f.values;
  const double h = f.grid.h();

  // Simpson over [0, last] where last is even.
  auto simpson = [&](Index last) {
    Scalar odd{0}, even{0};
    for (Index i = 1; i < last; i += 2) odd += v[i];
    for (Index i = 2; i < last; i += 2) even += v[i];
    return (h / 3.0) * (v[0] + v[last] + 4.0 * odd + 2.0 * even);
  };

  if (n % 2 == 1) return simpson(n - 1);
  const Index m = n - 4;  // even, leaves three intervals for the 3/8 rule
  return simpson(m) + (3.0 * h / 8.0) * (v[m] + 3.0 * v[m + 1] + 3.0 * v[m + 2] + v[m + 3]);
}

std::vector<double> find_real_zeros(const RealFunction& f) {
  const auto& v = f.values;
  const Index n = v.size();
  const double h = f.grid.h();
  std::vector<double> raw;
  for (Index i = 0; i < n; ++i) {
    if (v[i] == 0.0) {
      raw.push_back(f.grid.x(i));
      continue;
    }
    if (i + 1 < n && v[i + 1] != 0.0 && std::signbit(v[i]) != std::signbit(v[i + 1])) {
      const double t = v[i] / (v[i] - v[i + 1]);
      raw.push_back(f.grid.x(i) + t * h);
    }
  }
  std::vector<double> zeros;
  for (double z : raw) {
    if (!zeros.empty() && z - zeros.back() < 0.5 * h) {
      zeros.back() = 0.5 * (zeros.back() + z);
    } else {
      zeros.push_back(z);
    }
  }
  return zeros;
}

IndexRange interior(const Grid1D& grid, double fraction) {
  const double drop = std::clamp(0.5 * (1.0 - fraction), 0.0, 0.5);
  const auto margin = static_cast<Index>(std::ceil(drop * static_cast<double>(grid.n - 1)));
  const Index edge = std::max<Index>(margin, 2);
  return {edge, grid.n - edge};
}

template <typename Scalar>
GridFunction<Scalar> derivative6(const GridFunction<Scalar>& f) {
  GridFunction<Scalar> d = derivative(f, 1);
  const Index n = f.size();
  const double inv_h = 1.0 / f.grid.h();
  for (Index i = 3; i + 3 < n; ++i) {
    d.values[i] = (45.0 * (f[i + 1] - f[i - 1]) - 9.0 * (f[i + 2] - f[i - 2]) + (f[i + 3] - f[i - 3])) *
                  (inv_h / 60.0);
  }
  return d;
}

template RealFunction derivative(const RealFunction&, int);
template ComplexFunction derivative(const ComplexFunction&, int);
template double integrate(const RealFunction&);
template Complex integrate(const ComplexFunction&);
template RealFunction derivative6(const RealFunction&);
template ComplexFunction derivative6(const ComplexFunction&);

}  // namespace csusy
