#include "realgit/linalg.hpp"

#include <algorithm>
#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

namespace realgit {

Vector flatten(const Matrix& m) {
  Vector v(m.size());
  const auto rows = m.rows();
  const auto cols = m.cols();
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) v(i * cols + j) = m(i, j);
  return v;
}

Matrix unflatten(const Vector& v, int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = v(i * n + j);
  return m;
}

int numerical_rank(const Matrix& a, double rel_tol) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(a);
  const Vector& s = svd.singularValues();
  const double cut = rel_tol * std::max(1.0, s.size() ? s(0) : 0.0);
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > cut) ++r;
  return r;
}

Matrix column_space(const Matrix& cols, double rel_tol) {
  if (cols.cols() == 0) return Matrix(cols.rows(), 0);
  Eigen::JacobiSVD<Matrix> svd(cols, Eigen::ComputeThinU);
  const Vector& s = svd.singularValues();
  const double cut = rel_tol * std::max(1.0, s.size() ? s(0) : 0.0);
  Eigen::Index r = 0;
  while (r < s.size() && s(r) > cut) ++r;
  return svd.matrixU().leftCols(r);
}

Matrix null_space(const Matrix& a, double abs_tol) {
  const auto n = a.cols();
  if (n == 0) return Matrix(0, 0);
  if (a.rows() == 0) return Matrix::Identity(n, n);
  // Full V is needed: the kernel may be larger than min(rows, cols).
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullV);
  const Vector& s = svd.singularValues();
  Eigen::Index r = 0;
  while (r < s.size() && s(r) > abs_tol) ++r;
  return svd.matrixV().rightCols(n - r);
}

double residual_from_span(const Matrix& q, const Vector& v) {
  if (q.cols() == 0) return v.norm();
  return (v - q * (q.transpose() * v)).norm();
}

std::vector<EigenCluster> clustered_eigen(const Matrix& sym, double rel_gap) {
  std::vector<EigenCluster> out;
  const auto n = sym.rows();
  if (n == 0) return out;
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (sym + sym.transpose()));
  const Vector& ev = es.eigenvalues();
  const Matrix& vecs = es.eigenvectors();
  const double radius = std::max(std::abs(ev(0)), std::abs(ev(n - 1)));
  const double gap = rel_gap * (1.0 + radius);

  Eigen::Index start = 0;
  for (Eigen::Index i = 1; i <= n; ++i) {
    if (i < n && ev(i) - ev(i - 1) <= gap) continue;
    EigenCluster c;
    c.value = ev.segment(start, i - start).mean();
    if (std::abs(c.value) <= gap) c.value = 0.0;
    c.basis = vecs.middleCols(start, i - start);
    out.push_back(std::move(c));
    start = i;
  }
  return out;
}

Matrix symmetric_exp(const Matrix& sym, double t) {
  if (sym.rows() == 0) return sym;
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (sym + sym.transpose()));
  const Vector scaled = (t * es.eigenvalues()).array().exp();
  return es.eigenvectors() * scaled.asDiagonal() * es.eigenvectors().transpose();
}

Matrix general_exp(const Matrix& a) {
  if (a.rows() == 0) return a;
  return a.exp();
}

}  // namespace realgit
