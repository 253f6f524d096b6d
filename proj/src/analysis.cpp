#include "csusy/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace csusy {

ZeroArea zero_area(const ComplexPotential& v1) {
  ZeroArea out;
  out.integral = integrate(imag_part(v1.v1));
  const auto& alpha = v1.alpha.values;
  const Index last = alpha.size() - 1;
  out.boundary_form = 2.0 * v1.lambda / (alpha[last] * alpha[last]) -
                      2.0 * v1.lambda / (alpha[0] * alpha[0]);
  return out;
}

namespace {

Complex interpolate(const ComplexFunction& v, double x) {
  const Grid1D& g = v.grid;
  const double pos = (x - g.x_min) / g.h();
  const auto nearest = static_cast<Index>(std::llround(pos));
  if (std::abs(pos - static_cast<double>(nearest)) < 1e-9 && nearest >= 0 && nearest < g.n) {
    return v[nearest];
  }
  Index i = static_cast<Index>(std::floor(pos)) - 1;
  i = std::clamp<Index>(i, 0, g.n - 4);
  const double t = pos - static_cast<double>(i);  // nodes at t = 0, 1, 2, 3
  const double w0 = -(t - 1.0) * (t - 2.0) * (t - 3.0) / 6.0;
  const double w1 = t * (t - 2.0) * (t - 3.0) / 2.0;
  const double w2 = -t * (t - 1.0) * (t - 3.0) / 2.0;
  const double w3 = t * (t - 1.0) * (t - 2.0) / 6.0;
  return w0 * v[i] + w1 * v[i + 1] + w2 * v[i + 2] + w3 * v[i + 3];
}

}  // namespace

double pt_deviation(const ComplexFunction& v, double shift) {
  const Grid1D& g = v.grid;
  double worst = 0.0;
  for (Index i = 0; i < g.n; ++i) {
    const double x = g.x(i);
    const double mirror = 2.0 * shift - x;
    if (mirror < g.x_min - 1e-12 * g.h() || mirror > g.x_max + 1e-12 * g.h()) continue;
    const Complex reflected = interpolate(v, std::clamp(mirror, g.x_min, g.x_max));
    worst = std::max(worst, std::abs(v[i] - std::conj(reflected)));
  }
  return worst;
}

SymmetryVerdict pt_check(const ComplexFunction& v, std::optional<double> shift, double tolerance) {
  SymmetryVerdict verdict;
  if (shift) {
    verdict.best_shift = *shift;
    verdict.deviation = pt_deviation(v, *shift);
    verdict.is_pt_symmetric = verdict.deviation <= tolerance;
    return verdict;
  }

  // A centre only counts if its mirror window covers the features of V: the
  // gain and loss peaks of Im V, or the bottom of the well when V is real.
  // Without this, a centre near a flat tail compares V with itself.
  const Grid1D& g = v.grid;
  const Eigen::VectorXd im = v.values.imag();
  double f_lo = 0.0, f_hi = 0.0;
  if (im.cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, v.values.cwiseAbs().maxCoeff())) {
    Index imax = 0, imin = 0;
    im.maxCoeff(&imax);
    im.minCoeff(&imin);
    f_lo = g.x(std::min(imax, imin));
    f_hi = g.x(std::max(imax, imin));
  } else {
    Index well = 0;
    v.values.real().minCoeff(&well);
    f_lo = f_hi = g.x(well);
  }
  auto admissible = [&](double x0) {
    const double reach = std::min(x0 - g.x_min, g.x_max - x0);
    return x0 - reach <= f_lo + 1e-12 && x0 + reach >= f_hi - 1e-12;
  };

  verdict.deviation = std::numeric_limits<double>::infinity();
  verdict.best_shift = 0.5 * (f_lo + f_hi);
  auto consider = [&](double x0) {
    if (!admissible(x0)) return std::numeric_limits<double>::infinity();
    const double dev = pt_deviation(v, x0);
    if (dev < verdict.deviation) {
      verdict.deviation = dev;
      verdict.best_shift = x0;
    }
    return dev;
  };

  constexpr int kLattice = 401;
  const double step = (g.x_max - g.x_min) / (kLattice - 1);
  for (int k = 0; k < kLattice; ++k) consider(g.x_min + step * k);
  if (!std::isfinite(verdict.deviation)) {
    verdict.deviation = pt_deviation(v, verdict.best_shift);
  } else {
    // Golden-section refinement around the best lattice point.
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = std::max(g.x_min, verdict.best_shift - step);
    double b = std::min(g.x_max, verdict.best_shift + step);
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = consider(c), fd = consider(d);
    for (int it = 0; it < 60 && b - a > 1e-12 * (g.x_max - g.x_min); ++it) {
      if (fc < fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - invphi * (b - a);
        fc = consider(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + invphi * (b - a);
        fd = consider(d);
      }
    }
  }
  verdict.is_pt_symmetric = verdict.deviation <= tolerance;
  return verdict;
}

SymmetryVerdict pt_check(const ComplexPotential& v1, std::optional<double> shift, double tolerance) {
  return pt_check(v1.v1, shift, tolerance);
}

InterlacingReport interlacing_report(const MappedState& state) {
  const ComplexFunction& psi = state.psi;
  const Eigen::ArrayXd modulus = psi.values.cwiseAbs().array();
  const double peak = modulus.maxCoeff();

  Index first = 0, last = psi.size() - 1;
  while (first < last && modulus[first] <= 1e-4 * peak) ++first;
  while (last > first && modulus[last] <= 1e-4 * peak) --last;
  const double x_lo = psi.grid.x(first), x_hi = psi.grid.x(last);

  auto zeros_in_window = [&](const RealFunction& part) {
    std::vector<double> z;
    for (double x : find_real_zeros(part)) {
      if (x >= x_lo && x <= x_hi) z.push_back(x);
    }
    return z;
  };

  InterlacingReport rep;
  const RealFunction re = real_part(psi);
  const RealFunction im = imag_part(psi);
  const bool re_present = re.values.cwiseAbs().maxCoeff() > 1e-8 * peak;
  const bool im_present = im.values.cwiseAbs().maxCoeff() > 1e-8 * peak;
  if (re_present) rep.re_zeros = zeros_in_window(re);
  if (im_present) rep.im_zeros = zeros_in_window(im);
  if (!re_present || !im_present) {
    rep.alternation = Alternation::not_applicable;
    return rep;
  }

  // Merge the two sorted lists and require the labels to alternate.
  std::vector<std::pair<double, int>> merged;
  for (double x : rep.re_zeros) merged.emplace_back(x, 0);
  for (double x : rep.im_zeros) merged.emplace_back(x, 1);
  std::sort(merged.begin(), merged.end());
  bool alternating = true;
  for (std::size_t k = 1; k < merged.size(); ++k) {
    if (merged[k].second == merged[k - 1].second) alternating = false;
  }
  rep.alternation = alternating ? Alternation::alternating : Alternation::not_alternating;
  return rep;
}

const char* to_string(Alternation a) {
  switch (a) {
    case Alternation::alternating:
      return "alternating";
    case Alternation::not_alternating:
      return "not-alternating";
    case Alternation::not_applicable:
      return "not-applicable";
  }
  return "unknown";
}

}  // namespace csusy
