#pragma once

// Fixtures and independent reference computations shared by the tests.

#include <cmath>
#include <random>

#include "realgit/stability.hpp"

namespace rt {

using realgit::Direction;
using realgit::Matrix;
using realgit::Vector;

inline Matrix mat2(double a, double b, double c, double d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}
inline Matrix H2() { return mat2(1, 0, 0, -1); }
inline Matrix E2() { return mat2(0, 1, 0, 0); }
inline Matrix F2() { return mat2(0, 0, 1, 0); }

inline Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

inline Vector gaussian(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> nd;
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = nd(rng);
  return v;
}

inline Direction random_direction(std::mt19937_64& rng, const realgit::ReductiveStructure& s) {
  return Direction(gaussian(rng, s.dim_p()));
}

inline Direction unit_direction(std::mt19937_64& rng, const realgit::ReductiveStructure& s) {
  return s.normalized(random_direction(rng, s));
}

/// Haar-ish random rotation: Q factor of a Gaussian matrix, det fixed to +1.
inline Matrix random_rotation(std::mt19937_64& rng, int n) {
  Matrix a(n, n);
  for (int i = 0; i < n; ++i) a.col(i) = gaussian(rng, n);
  Eigen::HouseholderQR<Matrix> qr(a);
  Matrix q = qr.householderQ();
  if (q.determinant() < 0) q.col(0) *= -1.0;
  return q;
}

/// Symmetric part of m minus its trace part, i.e. the orthogonal projection
/// onto symmetric traceless matrices.
inline Matrix sym_traceless(const Matrix& m) {
  Matrix s = 0.5 * (m + m.transpose());
  s -= (s.trace() / static_cast<double>(s.rows())) * Matrix::Identity(s.rows(), s.cols());
  return s;
}

/// Elementary Taylor series for exp, used to cross-check group elements.
inline Matrix taylor_exp(const Matrix& a) {
  int squarings = 0;
  double nrm = a.norm();
  while (nrm > 0.5) {
    nrm /= 2;
    ++squarings;
  }
  const Matrix b = a / std::pow(2.0, squarings);
  Matrix term = Matrix::Identity(a.rows(), a.cols());
  Matrix sum = term;
  for (int k = 1; k < 30; ++k) {
    term = term * b / k;
    sum += term;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

/// λ(x,β) straight from the definition: largest eigenvalue of dρ(β) carrying a
/// nonzero component of x (affine: +∞ if that eigenvalue is positive, else 0;
/// projective: that eigenvalue). Uses a plain self-adjoint solver.
struct RefWeight {
  bool infinite = false;
  double value = 0.0;
};
inline RefWeight reference_weight(const Matrix& rho_beta, const Vector& x, bool projective,
                                  double comp_tol = 1e-9) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho_beta);
  const Vector c = es.eigenvectors().transpose() * x;
  const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  RefWeight r;
  if (x.norm() == 0.0) return r;
  // group eigenvalues within 1e-8 and take the top group with weight
  double top = -INFINITY;
  int n = static_cast<int>(c.size());
  for (int i = 0; i < n;) {
    int j = i;
    double w = 0.0;
    while (j < n && es.eigenvalues()(j) - es.eigenvalues()(i) <= 1e-8 * scale) {
      w += c(j) * c(j);
      ++j;
    }
    if (std::sqrt(w) > comp_tol * x.norm()) top = es.eigenvalues().segment(i, j - i).mean();
    i = j;
  }
  if (std::abs(top) <= 1e-8 * scale) top = 0.0;
  if (projective) {
    r.value = top;
  } else if (top > 0) {
    r.infinite = true;
  }
  return r;
}

}  // namespace rt
