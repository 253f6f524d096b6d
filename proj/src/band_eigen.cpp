#include "csusy/band_eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace csusy::band {

Index bandwidth(const Eigen::MatrixXcd& a) {
  Index bw = 0;
  for (Index j = 0; j < a.cols(); ++j) {
    for (Index i = 0; i < a.rows(); ++i) {
      if (a(i, j) != Complex(0.0, 0.0)) bw = std::max(bw, std::abs(i - j));
    }
  }
  return bw;
}

bool is_complex_symmetric(const Eigen::MatrixXcd& a) {
  if (a.rows() != a.cols()) return false;
  for (Index j = 0; j < a.cols(); ++j) {
    for (Index i = j + 1; i < a.rows(); ++i) {
      if (a(i, j) != a(j, i)) return false;
    }
  }
  return true;
}

namespace {

// A <- G A G^T with G the identity except for the 2x2 block
// [[c, s], [-s, c]] in rows/columns p, p+1, restricted to [lo, hi].
void rotate(Eigen::MatrixXcd& a, Index p, Complex c, Complex s, Index lo, Index hi) {
  for (Index j = lo; j <= hi; ++j) {
    const Complex x = a(p, j), y = a(p + 1, j);
    a(p, j) = c * x + s * y;
    a(p + 1, j) = -s * x + c * y;
  }
  for (Index i = lo; i <= hi; ++i) {
    const Complex x = a(i, p), y = a(i, p + 1);
    a(i, p) = c * x + s * y;
    a(i, p + 1) = -s * x + c * y;
  }
}

// Zeroes a(p + 1, col) against a(p, col). Returns false if nothing to do.
bool annihilate(Eigen::MatrixXcd& a, Index p, Index col, Index bw) {
  const Complex y = a(p + 1, col);
  if (y == Complex(0.0, 0.0)) return false;
  const Complex x = a(p, col);
  const Complex r = std::sqrt(x * x + y * y);
  if (std::abs(r) < 1e-8 * (std::abs(x) + std::abs(y))) {
    throw std::runtime_error("band reduction: ill-conditioned complex rotation");
  }
  const Index n = a.rows();
  const Index lo = std::max<Index>(0, p - bw - 1);
  const Index hi = std::min<Index>(n - 1, p + bw + 2);
  rotate(a, p, x / r, y / r, lo, hi);
  a(p + 1, col) = a(col, p + 1) = Complex(0.0, 0.0);
  return true;
}

}  // namespace

Tridiagonal reduce_to_tridiagonal(Eigen::MatrixXcd a, Index bw) {
  const Index n = a.rows();
  if (bw > 1) {
    for (Index j = 0; j + 2 < n; ++j) {
      for (Index i = std::min(j + bw, n - 1); i >= j + 2; --i) {
        if (!annihilate(a, i - 1, j, bw)) continue;
        // The rotation in plane (i-1, i) leaves a bulge at (i + bw, i - 1).
        Index row = i + bw;
        Index col = i - 1;
        while (row < n) {
          if (!annihilate(a, row - 1, col, bw)) break;
          col = row - 1;
          row += bw;
        }
      }
    }
  }
  Tridiagonal t;
  t.diag = a.diagonal();
  t.sub = n > 1 ? Eigen::VectorXcd(a.diagonal(-1)) : Eigen::VectorXcd();
  return t;
}

TridiagonalEigenvalues tridiagonal_eigenvalues(Tridiagonal t, int max_iter) {
  const Index n = t.diag.size();
  Eigen::VectorXcd& d = t.diag;
  Eigen::VectorXcd e = Eigen::VectorXcd::Zero(n);
  if (n > 1) e.head(n - 1) = t.sub;
  std::vector<bool> converged(static_cast<std::size_t>(n), true);
  constexpr double kEps = std::numeric_limits<double>::epsilon();

  for (Index l = 0; l < n; ++l) {
    int iter = 0;
    Index m = l;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= kEps * dd) break;
      }
      if (m == l) break;
      if (iter++ == max_iter) {
        converged[static_cast<std::size_t>(l)] = false;
        break;
      }
      Complex g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      Complex r = std::sqrt(g * g + 1.0);
      const Complex denom = std::abs(g + r) >= std::abs(g - r) ? g + r : g - r;
      g = d[m] - d[l] + e[l] / denom;
      Complex s = 1.0, c = 1.0, p = 0.0;
      Index i = m - 1;
      bool underflow = false;
      for (; i >= l; --i) {
        const Complex f = s * e[i];
        const Complex b = c * e[i];
        r = std::sqrt(f * f + g * g);
        e[i + 1] = r;
        if (std::abs(r) <= std::numeric_limits<double>::min() * (std::abs(f) + std::abs(g) + 1.0)) {
          d[i + 1] -= p;
          e[m] = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
      }
      if (underflow) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    } while (m != l);
  }

  TridiagonalEigenvalues out;
  out.values.assign(d.data(), d.data() + n);
  out.converged = std::move(converged);
  return out;
}

BandLU::BandLU(const Eigen::MatrixXcd& a, Index bw, Complex shift)
    : n_(a.rows()), bw_(bw), work_(Eigen::MatrixXcd::Zero(a.rows(), 3 * bw + 1)),
      lower_(Eigen::MatrixXcd::Zero(std::max<Index>(bw, 1), a.rows())),
      pivot_(static_cast<std::size_t>(a.rows())) {
  Eigen::VectorXd col_norm = Eigen::VectorXd::Zero(n_);
  for (Index i = 0; i < n_; ++i) {
    for (Index j = std::max<Index>(0, i - bw_); j <= std::min(n_ - 1, i + bw_); ++j) {
      at(i, j) = a(i, j);
      col_norm[j] += std::abs(a(i, j));
    }
    at(i, i) -= shift;
  }
  const double tiny = std::numeric_limits<double>::epsilon() * std::max(1.0, col_norm.maxCoeff());

  for (Index j = 0; j < n_; ++j) {
    const Index last_row = std::min(n_ - 1, j + bw_);
    const Index last_col = std::min(n_ - 1, j + 2 * bw_);
    Index piv = j;
    for (Index r = j + 1; r <= last_row; ++r) {
      if (std::abs(at(r, j)) > std::abs(at(piv, j))) piv = r;
    }
    pivot_[static_cast<std::size_t>(j)] = piv;
    if (piv != j) {
      for (Index col = j; col <= last_col; ++col) std::swap(at(j, col), at(piv, col));
    }
    if (std::abs(at(j, j)) < tiny) at(j, j) = tiny;
    const Complex pivot = at(j, j);
    for (Index r = j + 1; r <= last_row; ++r) {
      const Complex factor = at(r, j) / pivot;
      lower_(r - j - 1, j) = factor;
      if (factor == Complex(0.0, 0.0)) continue;
      for (Index col = j + 1; col <= last_col; ++col) at(r, col) -= factor * at(j, col);
      at(r, j) = 0.0;
    }
  }
}

Eigen::VectorXcd BandLU::solve(Eigen::VectorXcd rhs) const {
  for (Index j = 0; j < n_; ++j) {
    const Index piv = pivot_[static_cast<std::size_t>(j)];
    if (piv != j) std::swap(rhs[j], rhs[piv]);
    const Index last_row = std::min(n_ - 1, j + bw_);
    for (Index r = j + 1; r <= last_row; ++r) rhs[r] -= lower_(r - j - 1, j) * rhs[j];
  }
  for (Index j = n_ - 1; j >= 0; --j) {
    const Index last_col = std::min(n_ - 1, j + 2 * bw_);
    Complex acc = rhs[j];
    for (Index col = j + 1; col <= last_col; ++col) acc -= at(j, col) * rhs[col];
    rhs[j] = acc / at(j, j);
  }
  return rhs;
}

Eigen::VectorXcd band_multiply(const Eigen::MatrixXcd& a, Index bw, const Eigen::VectorXcd& x) {
  const Index n = a.rows();
  Eigen::VectorXcd y = Eigen::VectorXcd::Zero(n);
  for (Index i = 0; i < n; ++i) {
    const Index lo = std::max<Index>(0, i - bw), hi = std::min(n - 1, i + bw);
    Complex acc = 0.0;
    for (Index j = lo; j <= hi; ++j) acc += a(i, j) * x[j];
    y[i] = acc;
  }
  return y;
}

}  // namespace csusy::band
