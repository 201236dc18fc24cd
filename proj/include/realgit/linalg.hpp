#pragma once

#include <Eigen/Dense>
#include <vector>

namespace realgit {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Row-major flattening of an n×n matrix into a vector of length n².
Vector flatten(const Matrix& m);
Matrix unflatten(const Vector& v, int n);

inline Matrix bracket(const Matrix& a, const Matrix& b) { return a * b - b * a; }

/// Trace form ⟨A,B⟩ = trace(A·Bᵀ).
inline double trace_inner(const Matrix& a, const Matrix& b) {
  return (a.array() * b.array()).sum();
}

/// Numerical rank: number of singular values above tol·max(1, σ_max).
int numerical_rank(const Matrix& a, double rel_tol = 1e-9);

/// Orthonormal basis (columns) of the column space of `cols`.
Matrix column_space(const Matrix& cols, double rel_tol = 1e-9);

/// Orthonormal basis (columns) of the kernel of `a`. Singular values at or
/// below `abs_tol` count as zero.
Matrix null_space(const Matrix& a, double abs_tol);

/// Distance of `v` from the span of the orthonormal columns of `q`.
double residual_from_span(const Matrix& q, const Vector& v);

/// One eigenvalue cluster of a symmetric matrix: the cluster mean and an
/// orthonormal basis of the summed eigenspaces.
struct EigenCluster {
  double value = 0.0;
  Matrix basis;
};

/// Eigen-decomposition of a symmetric matrix with eigenvalues merged when
/// consecutive gaps are at most rel_gap·(1 + spectral radius). Clusters are
/// ascending; a cluster whose mean lies within the gap tolerance of zero is
/// snapped to exactly zero.
std::vector<EigenCluster> clustered_eigen(const Matrix& sym, double rel_gap = 1e-8);

/// exp(t·S) for symmetric S via its eigen-decomposition.
Matrix symmetric_exp(const Matrix& sym, double t = 1.0);

/// General matrix exponential (scaling and squaring with Padé approximants).
Matrix general_exp(const Matrix& a);

}  // namespace realgit
