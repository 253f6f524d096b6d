#include "csusy/seeds.hpp"

#include "csusy/kummer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace csusy {

ComplexFunction wronskian(const SeedPair& seed) {
  return {seed.grid(), seed.u1.values.cwiseProduct(seed.du2.values) -
                           seed.du1.values.cwiseProduct(seed.u2.values)};
}

double wronskian_deviation(const SeedPair& seed, IndexRange range) {
  const ComplexFunction w = wronskian(seed);
  const auto dev = (w.values.segment(range.begin, range.size()).array() - Complex(seed.w0, 0.0))
                       .abs()
                       .maxCoeff();
  return dev / std::abs(seed.w0);
}

ComplexFunction wronskian_fd(const ComplexFunction& f, const ComplexFunction& g) {
  const auto df = derivative(f, 1);
  const auto dg = derivative(g, 1);
  return {f.grid, f.values.cwiseProduct(dg.values) - df.values.cwiseProduct(g.values)};
}

namespace {

double residual_from_second(const ComplexFunction& u, const ComplexFunction& d2u,
                            const RealFunction& v0, double epsilon) {
  const IndexRange r = interior(u.grid);
  const Vector<Complex> res =
      -d2u.values + (v0.values.array() - epsilon).matrix().cast<Complex>().cwiseProduct(u.values);
  return max_abs(res, r) / max_abs(u.values, r);
}

}  // namespace

double schrodinger_residual(const ComplexFunction& u, const ComplexFunction& du,
                            const RealFunction& v0, double epsilon) {
  return residual_from_second(u, derivative(du, 1), v0, epsilon);
}

double schrodinger_residual(const ComplexFunction& u, const RealFunction& v0, double epsilon) {
  return residual_from_second(u, derivative(u, 2), v0, epsilon);
}

SeedPair free_particle_seeds(double kappa, const Grid1D& grid) {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) {
    throw std::invalid_argument("free particle seeds need kappa > 0");
  }
  const double half = 0.5 * kappa;
  SeedPair s;
  s.u1 = sample<Complex>(grid, [&](double x) { return std::exp(-half * x); });
  s.u2 = sample<Complex>(grid, [&](double x) { return std::exp(half * x); });
  s.du1 = {grid, -half * s.u1.values};
  s.du2 = {grid, half * s.u2.values};
  s.w0 = kappa;
  s.epsilon = -0.25 * kappa * kappa;
  s.v0 = {grid, Eigen::VectorXd::Zero(grid.n)};
  return s;
}

std::pair<double, double> free_particle_domain(double kappa, double decay) {
  const double half_width = 2.0 * std::log(1.0 / decay) / kappa;
  return {-half_width, half_width};
}

void MorseParams::validate() const {
  if (!(gamma > 0.0) || !(gamma0 > 0.0) || !std::isfinite(gamma) || !std::isfinite(gamma0)) {
    throw std::invalid_argument("Morse parameters need gamma > 0 and gamma0 > 0");
  }
  if (!(gamma0 > 0.5 * gamma * gamma)) {
    throw std::invalid_argument("Morse potential has no bound state: need gamma0 > gamma^2/2");
  }
}

double MorseParams::d() const { return std::sqrt(gamma0) / gamma; }
double MorseParams::sigma(double epsilon) const { return std::sqrt(gamma0 - epsilon) / gamma; }
double MorseParams::y(double x) const { return 2.0 * d() * std::exp(-gamma * x); }
double MorseParams::potential(double x) const {
  const double t = 1.0 - std::exp(-gamma * x);
  return gamma0 * t * t;
}

std::vector<double> morse_levels(const MorseParams& params) {
  params.validate();
  const double root = std::sqrt(params.gamma0);
  const auto top = static_cast<int>(std::floor(root / params.gamma - 0.5));
  std::vector<double> levels;
  for (int n = 0; n <= top; ++n) {
    const double half = n + 0.5;
    levels.push_back(params.gamma * ((2.0 * n + 1.0) * root - params.gamma * half * half));
  }
  return levels;
}

std::pair<double, double> morse_domain(const MorseParams& params, double epsilon, double wall_y,
                                       double decay) {
  params.validate();
  double slowest = std::sqrt(params.gamma0 - epsilon);
  for (double e : morse_levels(params)) slowest = std::min(slowest, std::sqrt(params.gamma0 - e));
  const double two_d = 2.0 * params.d();
  const double x_min = -std::log(wall_y / two_d) / params.gamma;
  const double x_max = std::log(two_d) / params.gamma + std::log(1.0 / decay) / slowest;
  return {x_min, x_max};
}

SeedPair morse_seeds(const MorseParams& params, double epsilon, const Grid1D& grid) {
  params.validate();
  if (!(epsilon < params.gamma0)) {
    throw std::invalid_argument("Morse seeds need eps < gamma0 for a real sigma");
  }
  constexpr double kMaxY = 700.0;
  const double y_left = params.y(grid.x_min);
  if (y_left > kMaxY) {
    throw std::overflow_error("Morse seeds: y = " + std::to_string(y_left) + " at x = " +
                              std::to_string(grid.x_min) + " exceeds the representable range");
  }

  const double d = params.d();
  const double sigma = params.sigma(epsilon);
  const double a1 = sigma + 0.5 - d, b1 = 1.0 + 2.0 * sigma;
  const double a2 = -sigma + 0.5 - d, b2 = 1.0 - 2.0 * sigma;

  SeedPair s;
  Vector<Complex> u1(grid.n), u2(grid.n), du1(grid.n), du2(grid.n);
  for (Index i = 0; i < grid.n; ++i) {
    const double x = grid.x(i);
    const double y = params.y(x);
    const double e = std::exp(-0.5 * y);
    const double p1 = std::pow(y, sigma), p2 = std::pow(y, -sigma);
    const double m1 = kummer_m(a1, b1, y), m2 = kummer_m(a2, b2, y);
    const double v1 = e * p1 * m1;
    const double v2 = e * p2 * m2;
    // du/dy then chain rule dy/dx = -gamma y.
    const double dv1 = v1 * (-0.5 + sigma / y) + e * p1 * kummer_m_dz(a1, b1, y);
    const double dv2 = v2 * (-0.5 - sigma / y) + e * p2 * kummer_m_dz(a2, b2, y);
    if (!std::isfinite(v1) || !std::isfinite(v2) || !std::isfinite(dv1) || !std::isfinite(dv2)) {
      throw std::overflow_error("Morse seeds not representable at x = " + std::to_string(x));
    }
    u1[i] = v1;
    u2[i] = v2;
    du1[i] = -params.gamma * y * dv1;
    du2[i] = -params.gamma * y * dv2;
  }
  s.u1 = {grid, std::move(u1)};
  s.u2 = {grid, std::move(u2)};
  s.du1 = {grid, std::move(du1)};
  s.du2 = {grid, std::move(du2)};
  s.epsilon = epsilon;
  s.v0 = sample<double>(grid, [&](double x) { return params.potential(x); });

  const double w0 = 2.0 * std::sqrt(params.gamma0 - epsilon);
  const Index mid = grid.n / 2;
  double measured = (s.u1[mid] * s.du2[mid] - s.du1[mid] * s.u2[mid]).real();
  if (measured < 0.0) {
    std::swap(s.u1, s.u2);
    std::swap(s.du1, s.du2);
    measured = -measured;
  }
  if (std::abs(measured - w0) > 1e-6 * w0) {
    throw std::logic_error("Morse seeds: measured Wronskian " + std::to_string(measured) +
                           " disagrees with 2 sqrt(gamma0 - eps) = " + std::to_string(w0));
  }
  s.w0 = w0;
  return s;
}

namespace {

struct Sweep {
  Vector<Complex> u;
  Vector<Complex> du;
};

// V0 at x_i + h/2 by cubic interpolation, one-sided near the ends.
double half_step_potential(const Eigen::VectorXd& v, Index i) {
  const Index n = v.size();
  if (i == 0) return (5.0 * v[0] + 15.0 * v[1] - 5.0 * v[2] + v[3]) / 16.0;
  if (i == n - 2) return (v[n - 4] - 5.0 * v[n - 3] + 15.0 * v[n - 2] + 5.0 * v[n - 1]) / 16.0;
  return (-v[i - 1] + 9.0 * v[i] + 9.0 * v[i + 1] - v[i + 2]) / 16.0;
}

Sweep integrate_sweep(const RealFunction& v0, double epsilon, bool left_to_right) {
  const Grid1D& g = v0.grid;
  const Index n = g.n;
  const double step = left_to_right ? g.h() : -g.h();
  const Index start = left_to_right ? 0 : n - 1;
  const double k = std::sqrt(std::max(v0[start] - epsilon, 0.0));

  Sweep out{Vector<Complex>(n), Vector<Complex>(n)};
  double u = 1.0;
  double du = left_to_right ? k : -k;
  out.u[start] = u;
  out.du[start] = du;

  auto q = [&](double v) { return v - epsilon; };
  for (Index s = 0; s < n - 1; ++s) {
    const Index i = left_to_right ? s : n - 1 - s;
    const Index next = left_to_right ? i + 1 : i - 1;
    const double q0 = q(v0[i]);
    const double qm = q(half_step_potential(v0.values, left_to_right ? i : i - 1));
    const double q1 = q(v0[next]);

    const double k1u = du, k1d = q0 * u;
    const double k2u = du + 0.5 * step * k1d, k2d = qm * (u + 0.5 * step * k1u);
    const double k3u = du + 0.5 * step * k2d, k3d = qm * (u + 0.5 * step * k2u);
    const double k4u = du + step * k3d, k4d = q1 * (u + step * k3u);
    u += step / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
    du += step / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d);

    if (!std::isfinite(u) || !std::isfinite(du) || std::abs(u) > 1e280) {
      throw std::overflow_error("numerical seeds: integration blew up at x = " +
                                std::to_string(g.x(next)));
    }
    out.u[next] = u;
    out.du[next] = du;
  }
  const double scale = out.u.cwiseAbs().maxCoeff();
  out.u /= scale;
  out.du /= scale;
  return out;
}

}  // namespace

SeedPair numerical_seeds(const RealFunction& v0, double epsilon) {
  if (!v0.all_finite()) throw std::invalid_argument("numerical seeds need finite V0 samples");
  if (v0.values.size() != v0.grid.n) throw std::invalid_argument("V0 size does not match grid");
  const Grid1D& g = v0.grid;

  Sweep left = integrate_sweep(v0, epsilon, true);
  Sweep right = integrate_sweep(v0, epsilon, false);

  // Pin both solutions to 1 at the centre node. That keeps w0 of order one,
  // so the constraint sees (a, c) on the scale of the closed-form seeds
  // (for V0 = 0 this reproduces e^{-+kappa x/2} on a symmetric window).
  const Index mid = g.n / 2;
  for (Sweep* sw : {&left, &right}) {
    const Complex pin = sw->u[mid];
    if (std::abs(pin) > 0.0) {
      sw->u /= pin;
      sw->du /= pin;
    }
  }
  if (!left.u.allFinite() || !right.u.allFinite()) {
    throw std::overflow_error("numerical seeds: solutions not representable once pinned at the centre");
  }
  double w = (left.u[mid] * right.du[mid] - left.du[mid] * right.u[mid]).real();
  const double scale = std::abs(left.u[mid] * right.du[mid]) + std::abs(left.du[mid] * right.u[mid]);
  if (!(std::abs(w) > 1e-10 * scale) || scale == 0.0) {
    throw std::runtime_error(
        "numerical seeds: the two sweeps are linearly dependent (is eps an eigenvalue?)");
  }
  SeedPair s;
  if (w > 0.0) {
    s.u1 = {g, std::move(left.u)};
    s.du1 = {g, std::move(left.du)};
    s.u2 = {g, std::move(right.u)};
    s.du2 = {g, std::move(right.du)};
  } else {
    s.u1 = {g, std::move(right.u)};
    s.du1 = {g, std::move(right.du)};
    s.u2 = {g, std::move(left.u)};
    s.du2 = {g, std::move(left.du)};
    w = -w;
  }
  s.w0 = w;
  s.epsilon = epsilon;
  s.v0 = v0;
  return s;
}

}  // namespace csusy
