#include "csusy/spectral.hpp"

#include "csusy/band_eigen.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>

namespace csusy {
namespace {

constexpr std::array<double, 2> kSecondOrder{2.0, -1.0};
constexpr std::array<double, 4> kSixthOrder{49.0 / 18.0, -3.0 / 2.0, 3.0 / 20.0, -1.0 / 90.0};

std::span<const double> kinetic_coefficients(KineticStencil s) {
  if (s == KineticStencil::second_order) return kSecondOrder;
  return kSixthOrder;
}

Eigen::VectorXcd interior_values(const ComplexFunction& psi) {
  return psi.values.segment(1, psi.grid.n - 2);
}

ComplexFunction embed(const Grid1D& grid, const Eigen::VectorXcd& inner) {
  Vector<Complex> v = Vector<Complex>::Zero(grid.n);
  v.segment(1, grid.n - 2) = inner;
  return {grid, std::move(v)};
}

Eigen::VectorXcd start_vector(Index n) {
  Eigen::VectorXcd v(n);
  for (Index i = 0; i < n; ++i) v[i] = 1.0 + 0.3 * std::sin(1.7 * static_cast<double>(i) + 0.1);
  return v / v.norm();
}

std::pair<double, double> edge_mass(const Eigen::VectorXcd& v) {
  const Index n = v.size();
  const auto edge = std::max<Index>(1, static_cast<Index>(std::ceil(0.05 * static_cast<double>(n))));
  const double total = v.squaredNorm();
  if (total == 0.0) return {0.0, 0.0};
  return {v.head(edge).squaredNorm() / total, v.tail(edge).squaredNorm() / total};
}

double one_norm(const Eigen::MatrixXcd& m) { return m.cwiseAbs().colwise().sum().maxCoeff(); }

}  // namespace

DenseOperator discretize(const ComplexFunction& v, KineticStencil stencil) {
  const Grid1D& g = v.grid;
  if (v.values.size() != g.n) throw std::invalid_argument("potential size does not match grid");
  if (!v.all_finite()) throw std::invalid_argument("potential must be finite to discretize");
  const auto coeff = kinetic_coefficients(stencil);
  const auto reach = static_cast<Index>(coeff.size()) - 1;
  const Index n = g.n;
  const Index m = n - 2;
  const double inv_h2 = 1.0 / (g.h() * g.h());

  DenseOperator op;
  op.grid = g;
  op.stencil = stencil;
  op.bandwidth = reach;
  op.potential = v;
  op.matrix = Eigen::MatrixXcd::Zero(m, m);
  for (Index k = 1; k <= n - 2; ++k) {
    const Index row = k - 1;
    for (Index j = -reach; j <= reach; ++j) {
      const double c = coeff[static_cast<std::size_t>(std::abs(j))] * inv_h2;
      Index q = k + j;
      double sign = 1.0;
      if (q < 0) {
        q = -q;
        sign = -1.0;
      } else if (q > n - 1) {
        q = 2 * (n - 1) - q;
        sign = -1.0;
      }
      if (q == 0 || q == n - 1) continue;
      op.matrix(row, q - 1) += sign * c;
    }
    op.matrix(row, row) += v[k];
  }
  return op;
}

DenseOperator discretize(const RealFunction& v, KineticStencil stencil) {
  return discretize(to_complex(v), stencil);
}

ComplexFunction apply_hamiltonian(const DenseOperator& op, const ComplexFunction& psi) {
  return embed(op.grid, band::band_multiply(op.matrix, op.bandwidth, interior_values(psi)));
}

SpectralReport eigenvalues_dense(const DenseOperator& op, const EigenOptions& options) {
  const Eigen::MatrixXcd& a = op.matrix;
  const Index n = a.rows();
  if (n > options.max_dimension) {
    throw std::invalid_argument("operator dimension " + std::to_string(n) + " exceeds the cap of " +
                                std::to_string(options.max_dimension));
  }

  SpectralReport rep;
  rep.operator_norm = one_norm(a);
  if (op.potential.size() == op.grid.n && op.grid.n >= 3) {
    rep.left_potential = op.potential[1].real();
    rep.right_potential = op.potential[op.grid.n - 2].real();
  }
  std::vector<Complex> values;
  std::vector<bool> converged;
  std::vector<double> residuals;
  std::vector<std::pair<double, double>> masses;

  const Index bw = band::bandwidth(a);
  bool banded = band::is_complex_symmetric(a) && bw <= 16;
  if (banded) {
    try {
      auto tri = band::reduce_to_tridiagonal(a, bw);
      auto eig = band::tridiagonal_eigenvalues(std::move(tri));
      values = std::move(eig.values);
      converged = std::move(eig.converged);
    } catch (const std::runtime_error&) {
      banded = false;
    }
  }

  if (banded) {
    rep.path = EigenPath::banded_symmetric;
    for (const Complex& lambda : values) {
      const band::BandLU lu(a, bw, lambda);
      Eigen::VectorXcd v = start_vector(n);
      for (int it = 0; it < options.inverse_iterations; ++it) {
        v = lu.solve(v);
        v /= v.norm();
      }
      const Eigen::VectorXcd r = band::band_multiply(a, bw, v) - lambda * v;
      residuals.push_back(r.norm() / rep.operator_norm);
      masses.push_back(edge_mass(v));
    }
  } else {
    rep.path = EigenPath::general;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(a, true);
    if (solver.info() != Eigen::Success) {
      throw std::runtime_error("general eigensolver did not converge");
    }
    values.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
    converged.assign(static_cast<std::size_t>(n), true);
    for (Index k = 0; k < n; ++k) {
      Eigen::VectorXcd v = solver.eigenvectors().col(k);
      v /= v.norm();
      residuals.push_back((a * v - values[static_cast<std::size_t>(k)] * v).norm() /
                          std::max(rep.operator_norm, std::numeric_limits<double>::min()));
      masses.push_back(edge_mass(v));
    }
  }

  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
    if (values[l].real() != values[r].real()) return values[l].real() < values[r].real();
    return values[l].imag() < values[r].imag();
  });
  for (std::size_t k : order) {
    rep.eigenvalues.push_back(values[k]);
    rep.residuals.push_back(residuals[k]);
    rep.left_mass.push_back(masses[k].first);
    rep.right_mass.push_back(masses[k].second);
    rep.boundary_mass.push_back(masses[k].first + masses[k].second);
    rep.converged.push_back(converged[k]);
    if (converged[k]) rep.max_imag = std::max(rep.max_imag, std::abs(values[k].imag()));
  }
  if (options.continuum_threshold) {
    rep.bound_count = static_cast<Index>(bound_spectrum(rep, *options.continuum_threshold).size());
  }
  return rep;
}

std::vector<Complex> bound_spectrum(const SpectralReport& report, double threshold) {
  std::vector<Complex> out;
  for (std::size_t k = 0; k < report.eigenvalues.size(); ++k) {
    if (!report.converged[k]) continue;
    if (!(report.eigenvalues[k].real() < threshold)) continue;
    double mass = 0.0;
    if (report.left_potential <= threshold) mass += report.left_mass[k];
    if (report.right_potential <= threshold) mass += report.right_mass[k];
    if (mass > kBoundaryMassCutoff) continue;
    out.push_back(report.eigenvalues[k]);
  }
  return out;
}

ComplexFunction eigenvector(const DenseOperator& op, Complex energy, int iterations) {
  const Eigen::MatrixXcd& a = op.matrix;
  const Index n = a.rows();
  Eigen::VectorXcd v = start_vector(n);
  const Index bw = band::bandwidth(a);
  if (band::is_complex_symmetric(a) && bw <= 16) {
    const band::BandLU lu(a, bw, energy);
    for (int it = 0; it < iterations; ++it) {
      v = lu.solve(v);
      v /= v.norm();
    }
  } else {
    const double nudge = std::numeric_limits<double>::epsilon() * std::max(1.0, one_norm(a));
    const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a - (energy + nudge) *
                                                           Eigen::MatrixXcd::Identity(n, n));
    for (int it = 0; it < iterations; ++it) {
      v = lu.solve(v);
      v /= v.norm();
    }
  }
  ComplexFunction psi = embed(op.grid, v);
  normalize_state(psi);
  return psi;
}

double eigen_residual(const DenseOperator& op, const ComplexFunction& psi, Complex energy) {
  const Eigen::VectorXcd v = interior_values(psi);
  const Eigen::VectorXcd r = band::band_multiply(op.matrix, op.bandwidth, v) - energy * v;
  return r.norm() / v.norm();
}

std::vector<ComplexFunction> gaussian_probes(const Grid1D& grid, const std::vector<double>& centres,
                                             double width) {
  std::vector<ComplexFunction> probes;
  for (double c : centres) {
    probes.push_back(sample<Complex>(grid, [&](double x) {
      const double t = (x - c) / width;
      return std::exp(-0.5 * t * t);
    }));
  }
  return probes;
}

double verify_intertwining(const DenseOperator& op0, const DenseOperator& op1,
                           const SuperPotential& sp, const std::vector<ComplexFunction>& probes) {
  const Grid1D& g = op0.grid;
  const auto& beta = sp.beta.values;
  auto apply_b = [&](const ComplexFunction& f) {
    return ComplexFunction{g, derivative6(f).values + beta.cwiseProduct(f.values)};
  };
  auto apply_a = [&](const ComplexFunction& f) {
    return ComplexFunction{g, -derivative6(f).values + beta.cwiseProduct(f.values)};
  };

  // Nodes within reach of the pinned end samples see the truncation, not the
  // operator identity: H reaches `bandwidth` nodes, the derivative two more.
  const Index skip = std::max(op0.bandwidth, op1.bandwidth) + 2 + 3;
  if (g.n <= 2 * skip + 2) throw std::invalid_argument("grid too small for the intertwining check");
  auto core_norm = [&](const Vector<Complex>& v) { return v.segment(skip, g.n - 2 * skip).norm(); };

  double worst = 0.0;
  for (const ComplexFunction& p : probes) {
    const double scale = interior_values(p).norm();
    const ComplexFunction bh0 = apply_b(apply_hamiltonian(op0, p));
    const ComplexFunction h1b = apply_hamiltonian(op1, apply_b(p));
    const ComplexFunction h0a = apply_hamiltonian(op0, apply_a(p));
    const ComplexFunction ah1 = apply_a(apply_hamiltonian(op1, p));
    const double forward = core_norm(bh0.values - h1b.values);
    const double backward = core_norm(h0a.values - ah1.values);
    worst = std::max({worst, forward / scale, backward / scale});
  }
  return worst;
}

}  // namespace csusy
