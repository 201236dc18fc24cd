#include "realgit/liealg.hpp"

#include <algorithm>
#include <cmath>

#include "realgit/error.hpp"

namespace realgit {

namespace {

Matrix stack_flat(const std::vector<Matrix>& mats, int n) {
  Matrix out(n * n, static_cast<Eigen::Index>(mats.size()));
  for (size_t j = 0; j < mats.size(); ++j) out.col(static_cast<Eigen::Index>(j)) = flatten(mats[j]);
  return out;
}

Matrix unit(const Matrix& m) {
  const double nm = m.norm();
  return nm > 0 ? Matrix(m / nm) : m;
}

}  // namespace

ReductiveStructure::ReductiveStructure(int ambient_dim, std::vector<Matrix> basis_k,
                                       std::vector<Matrix> basis_p)
    : n_(ambient_dim), basis_k_(std::move(basis_k)), basis_p_(std::move(basis_p)) {
  if (n_ <= 0) throw DimensionError("ambient_dim must be positive");
  for (const auto& b : basis_k_) require_square(b, "basis_k element");
  for (const auto& b : basis_p_) require_square(b, "basis_p element");

  const int dp = dim_p();
  gram_p_.resize(dp, dp);
  for (int i = 0; i < dp; ++i)
    for (int j = 0; j < dp; ++j) gram_p_(i, j) = trace_inner(basis_p_[i], basis_p_[j]);

  chol_l_ = Matrix::Zero(dp, dp);
  if (dp > 0) {
    Eigen::LLT<Matrix> llt(gram_p_);
    const double scale = gram_p_.diagonal().maxCoeff();
    if (llt.info() != Eigen::Success || scale <= 0) {
      p_degenerate_ = true;
    } else {
      chol_l_ = llt.matrixL();
      const double dmin = chol_l_.diagonal().cwiseAbs().minCoeff();
      if (dmin * dmin <= 1e-12 * scale) p_degenerate_ = true;
    }
  }

  const Matrix kf = stack_flat(basis_k_, n_);
  const Matrix pf = stack_flat(basis_p_, n_);
  k_frame_ = column_space(kf);
  p_frame_ = column_space(pf);

  // g frame: k part first, then whatever p adds beyond span(k).
  Matrix p_rest = pf;
  if (k_frame_.cols() > 0) p_rest -= k_frame_ * (k_frame_.transpose() * pf);
  const Matrix extra = column_space(p_rest);
  frame_k_ = static_cast<int>(k_frame_.cols());
  g_frame_.resize(n_ * n_, k_frame_.cols() + extra.cols());
  g_frame_ << k_frame_, extra;

  Matrix all(n_ * n_, kf.cols() + pf.cols());
  all << kf, pf;
  if (all.cols() > 0)
    g_pinv_ = all.completeOrthogonalDecomposition().pseudoInverse();
  else
    g_pinv_ = Matrix(0, n_ * n_);
}

void ReductiveStructure::require_square(const Matrix& m, const char* what) const {
  if (m.rows() != n_ || m.cols() != n_)
    throw DimensionError(std::string(what) + ": expected " + std::to_string(n_) + "x" +
                         std::to_string(n_) + " matrix, got " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()));
}

Matrix ReductiveStructure::p_matrix(const Direction& beta) const {
  if (beta.coords.size() != dim_p())
    throw DimensionError("direction has " + std::to_string(beta.coords.size()) +
                         " coordinates, p has dimension " + std::to_string(dim_p()));
  Matrix m = Matrix::Zero(n_, n_);
  for (int i = 0; i < dim_p(); ++i) m += beta.coords(i) * basis_p_[i];
  return m;
}

Direction ReductiveStructure::p_coords(const Matrix& m) const {
  require_square(m, "matrix");
  Vector rhs(dim_p());
  for (int i = 0; i < dim_p(); ++i) rhs(i) = trace_inner(basis_p_[i], m);
  if (dim_p() == 0) return Direction(Vector(0));
  if (!p_degenerate_) {
    const auto l = chol_l_.triangularView<Eigen::Lower>();
    Vector y = l.solve(rhs);
    return Direction(l.transpose().solve(y));
  }
  return Direction(gram_p_.completeOrthogonalDecomposition().solve(rhs));
}

double ReductiveStructure::inner(const Direction& a, const Direction& b) const {
  if (a.coords.size() != dim_p() || b.coords.size() != dim_p())
    throw DimensionError("direction length does not match dim p");
  return a.coords.dot(gram_p_ * b.coords);
}

double ReductiveStructure::norm(const Direction& beta) const {
  return std::sqrt(std::max(0.0, inner(beta, beta)));
}

Direction ReductiveStructure::normalized(const Direction& beta) const {
  const double nb = norm(beta);
  if (nb == 0.0) throw InputError("cannot normalize the zero direction");
  return Direction(beta.coords / nb);
}

Vector ReductiveStructure::to_orthonormal(const Direction& beta) const {
  if (p_degenerate_) throw InputError("basis_p is linearly dependent (singular Gram matrix)");
  if (beta.coords.size() != dim_p()) throw DimensionError("direction length does not match dim p");
  return chol_l_.transpose() * beta.coords;
}

Direction ReductiveStructure::from_orthonormal(const Vector& u) const {
  if (p_degenerate_) throw InputError("basis_p is linearly dependent (singular Gram matrix)");
  if (u.size() != dim_p()) throw DimensionError("orthonormal coordinate length does not match dim p");
  return Direction(chol_l_.transpose().triangularView<Eigen::Upper>().solve(u));
}

Matrix ReductiveStructure::frame_matrix(int j) const { return unflatten(g_frame_.col(j), n_); }

Vector ReductiveStructure::g_coords(const Matrix& m) const {
  require_square(m, "matrix");
  return g_pinv_ * flatten(m);
}

Matrix cartan_involution(const ReductiveStructure& s, const Matrix& a) {
  s.require_square(a, "cartan_involution argument");
  return -a.transpose();
}

StructureDiagnostics check_compatible_structure(const ReductiveStructure& s, double tol) {
  StructureDiagnostics d;
  d.tolerance = tol;
  d.convention =
      "<A,B> = trace(A*B^T); positive definite on all of g, so on k it is the negative of the "
      "compact-form convention; theta(A) = -A^T";

  std::vector<Matrix> k, p, g;
  for (const auto& b : s.basis_k()) k.push_back(unit(b));
  for (const auto& b : s.basis_p()) p.push_back(unit(b));
  g = k;
  g.insert(g.end(), p.begin(), p.end());

  const Matrix& kf = s.k_frame();
  const Matrix& pf = s.p_frame();
  auto dist = [](const Matrix& frame, const Matrix& m) {
    return residual_from_span(frame, flatten(m));
  };

  for (size_t i = 0; i < k.size(); ++i)
    for (size_t j = i + 1; j < k.size(); ++j)
      d.closure_kk = std::max(d.closure_kk, dist(kf, bracket(k[i], k[j])));
  for (const auto& a : k)
    for (const auto& b : p) d.closure_kp = std::max(d.closure_kp, dist(pf, bracket(a, b)));
  for (size_t i = 0; i < p.size(); ++i)
    for (size_t j = i + 1; j < p.size(); ++j)
      d.closure_pp = std::max(d.closure_pp, dist(kf, bracket(p[i], p[j])));

  for (const auto& b : k) d.theta_k = std::max(d.theta_k, (-b.transpose() - b).norm());
  for (const auto& b : p) d.theta_p = std::max(d.theta_p, (-b.transpose() + b).norm());

  for (const auto& xi : k)
    for (const auto& a : g)
      for (const auto& b : g)
        d.ad_invariance = std::max(
            d.ad_invariance, std::abs(trace_inner(bracket(xi, a), b) + trace_inner(a, bracket(xi, b))));

  for (const auto& a : g)
    for (const auto& b : g)
      for (const auto& c : g) {
        const Matrix r = bracket(a, bracket(b, c)) + bracket(b, bracket(c, a)) + bracket(c, bracket(a, b));
        d.jacobi = std::max(d.jacobi, r.norm());
      }

  Matrix all(s.ambient_dim() * s.ambient_dim(), static_cast<Eigen::Index>(g.size()));
  for (size_t j = 0; j < g.size(); ++j) all.col(static_cast<Eigen::Index>(j)) = flatten(g[j]);
  d.rank_deficit = static_cast<int>(g.size()) - numerical_rank(all);

  d.ok = d.closure_kk <= tol && d.closure_kp <= tol && d.closure_pp <= tol && d.theta_k <= tol &&
         d.theta_p <= tol && d.ad_invariance <= tol && d.jacobi <= tol && d.rank_deficit == 0 &&
         !s.p_basis_degenerate();
  return d;
}

std::vector<AdEigenspace> ad_eigenspaces(const ReductiveStructure& s, const Direction& beta,
                                         double rel_gap) {
  const Matrix b = s.p_matrix(beta);
  const Matrix& f = s.g_frame();
  const int n = s.ambient_dim();
  const auto dg = f.cols();

  // Matrix of ad(β) in the orthonormal frame of g.
  Matrix ad(dg, dg);
  double leak = 0.0;
  for (Eigen::Index j = 0; j < dg; ++j) {
    const Vector img = flatten(bracket(b, unflatten(f.col(j), n)));
    ad.col(j) = f.transpose() * img;
    leak = std::max(leak, (img - f * ad.col(j)).norm());
  }
  const double scale = 1.0 + ad.norm();
  const double asym = (ad - ad.transpose()).norm();
  if (leak > 1e-8 * scale || asym > 1e-8 * scale)
    throw InputError("direction is not in p: ad(beta) is not self-adjoint on g (residual " +
                     std::to_string(std::max(leak, asym)) + ")");

  std::vector<AdEigenspace> out;
  for (const auto& c : clustered_eigen(ad, rel_gap)) {
    AdEigenspace e;
    e.eigenvalue = c.value;
    for (Eigen::Index j = 0; j < c.basis.cols(); ++j) e.basis.push_back(unflatten(f * c.basis.col(j), n));
    out.push_back(std::move(e));
  }
  return out;
}

SubalgebraSplit parabolic_subalgebra(const ReductiveStructure& s, const Direction& beta) {
  SubalgebraSplit out;
  for (const auto& e : ad_eigenspaces(s, beta)) {
    if (e.eigenvalue == 0.0)
      out.levi.insert(out.levi.end(), e.basis.begin(), e.basis.end());
    else if (e.eigenvalue > 0.0)
      out.nilradical_plus.insert(out.nilradical_plus.end(), e.basis.begin(), e.basis.end());
  }
  for (const auto& m : out.nilradical_plus) out.nilradical_minus.push_back(cartan_involution(s, m));
  out.parabolic_plus = out.levi;
  out.parabolic_plus.insert(out.parabolic_plus.end(), out.nilradical_plus.begin(),
                            out.nilradical_plus.end());
  return out;
}

namespace {

// Kernel of v ↦ ([v,e])_{e∈E} over the span of `frame`; returned as columns in frame coordinates.
Matrix commutant_kernel(const ReductiveStructure& s, const Matrix& frame,
                        std::span<const Direction> e) {
  const int n = s.ambient_dim();
  const auto d = frame.cols();
  if (e.empty() || d == 0) return Matrix::Identity(d, d);
  Matrix map(static_cast<Eigen::Index>(e.size()) * n * n, d);
  double scale = 0.0;
  std::vector<Matrix> em;
  for (const auto& dir : e) {
    em.push_back(s.p_matrix(dir));
    scale = std::max(scale, em.back().norm());
  }
  for (Eigen::Index j = 0; j < d; ++j) {
    const Matrix v = unflatten(frame.col(j), n);
    for (size_t i = 0; i < em.size(); ++i)
      map.block(static_cast<Eigen::Index>(i) * n * n, j, n * n, 1) = flatten(bracket(v, em[i]));
  }
  return null_space(map, 1e-9 * std::max(1.0, scale));
}

}  // namespace

std::vector<Direction> centralizer_in_p(const ReductiveStructure& s, std::span<const Direction> e) {
  const Matrix ker = commutant_kernel(s, s.p_frame(), e);
  std::vector<Direction> out;
  for (Eigen::Index j = 0; j < ker.cols(); ++j)
    out.push_back(s.p_coords(unflatten(s.p_frame() * ker.col(j), s.ambient_dim())));
  return out;
}

std::vector<Matrix> centralizer_in_k(const ReductiveStructure& s, std::span<const Direction> e) {
  const Matrix ker = commutant_kernel(s, s.k_frame(), e);
  std::vector<Matrix> out;
  for (Eigen::Index j = 0; j < ker.cols(); ++j)
    out.push_back(unflatten(s.k_frame() * ker.col(j), s.ambient_dim()));
  return out;
}

GlobalDecomposition check_global_decomposition(const ReductiveStructure& s, const Direction& beta) {
  GlobalDecomposition r;
  const SubalgebraSplit split = parabolic_subalgebra(s, beta);
  const int n = s.ambient_dim();
  r.dim_g = static_cast<int>(s.g_frame().cols());
  r.dim_k = static_cast<int>(s.k_frame().cols());
  r.dim_parabolic = static_cast<int>(split.parabolic_plus.size());

  Matrix sum(n * n, r.dim_k + r.dim_parabolic);
  sum.leftCols(r.dim_k) = s.k_frame();
  for (int j = 0; j < r.dim_parabolic; ++j) sum.col(r.dim_k + j) = flatten(split.parabolic_plus[j]);
  r.dim_sum = numerical_rank(sum);
  r.dim_intersection = r.dim_k + r.dim_parabolic - r.dim_sum;
  const Direction one[] = {beta};
  r.dim_k_beta = static_cast<int>(centralizer_in_k(s, one).size());
  r.holds = r.dim_sum == r.dim_g && r.dim_intersection == r.dim_k_beta;
  return r;
}

Direction adjoint_action(const ReductiveStructure& s, const Matrix& k, const Direction& beta) {
  s.require_square(k, "group element");
  return s.p_coords(k * s.p_matrix(beta) * k.transpose());
}

ReductiveStructure sl_preset(int n) {
  if (n < 2) throw InputError("sl(n) preset needs n >= 2");
  std::vector<Matrix> k, p;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Matrix m = Matrix::Zero(n, n);
      m(i, j) = 1;
      m(j, i) = -1;
      k.push_back(m);
    }
  for (int i = 0; i + 1 < n; ++i) {
    Matrix m = Matrix::Zero(n, n);
    m(i, i) = 1;
    m(i + 1, i + 1) = -1;
    p.push_back(m);
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Matrix m = Matrix::Zero(n, n);
      m(i, j) = 1;
      m(j, i) = 1;
      p.push_back(m);
    }
  return ReductiveStructure(n, std::move(k), std::move(p));
}

}  // namespace realgit
