#include "realgit/action.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "realgit/error.hpp"

namespace realgit {

const char* to_string(Space s) { return s == Space::Affine ? "affine" : "projective"; }

Representation::Representation(ReductiveStructure s, std::vector<Matrix> rho_k,
                               std::vector<Matrix> rho_p, Space space)
    : s_(std::move(s)), m_(0), rho_k_(std::move(rho_k)), rho_p_(std::move(rho_p)), space_(space) {
  if (static_cast<int>(rho_k_.size()) != s_.dim_k())
    throw DimensionError("rho_k has " + std::to_string(rho_k_.size()) + " matrices, basis_k has " +
                         std::to_string(s_.dim_k()));
  if (static_cast<int>(rho_p_.size()) != s_.dim_p())
    throw DimensionError("rho_p has " + std::to_string(rho_p_.size()) + " matrices, basis_p has " +
                         std::to_string(s_.dim_p()));
  m_ = -1;
  for (const auto* list : {&rho_k_, &rho_p_})
    for (const auto& r : *list) {
      if (r.rows() != r.cols()) throw DimensionError("representation matrices must be square");
      if (m_ < 0) m_ = static_cast<int>(r.rows());
      if (r.rows() != m_) throw DimensionError("representation matrices have inconsistent sizes");
    }
  if (m_ < 0) throw DimensionError("representation of the zero algebra needs an explicit dimension");
  if (m_ == 0) throw DimensionError("representation space must be nonzero");

  if (!s_.p_basis_degenerate()) {
    const int dp = s_.dim_p();
    // c = L^{-T}u, so the j-th orthonormal element is Σ_i (L^{-T})_{ij} p_i.
    for (int j = 0; j < dp; ++j) {
      Vector e = Vector::Zero(dp);
      e(j) = 1.0;
      rho_p_on_.push_back(rho(s_.from_orthonormal(e)));
    }
  }
}

Representation Representation::with_space(Space s) const {
  Representation r = *this;
  r.space_ = s;
  return r;
}

Matrix Representation::rho(const Direction& beta) const {
  if (beta.coords.size() != s_.dim_p())
    throw DimensionError("direction has " + std::to_string(beta.coords.size()) +
                         " coordinates, p has dimension " + std::to_string(s_.dim_p()));
  Matrix d = Matrix::Zero(m_, m_);
  for (int i = 0; i < s_.dim_p(); ++i) d += beta.coords(i) * rho_p_[i];
  return 0.5 * (d + d.transpose());
}

Matrix Representation::rho_k_combination(const Vector& c) const {
  if (c.size() != s_.dim_k()) throw DimensionError("k coefficient length does not match dim k");
  Matrix d = Matrix::Zero(m_, m_);
  for (int i = 0; i < s_.dim_k(); ++i) d += c(i) * rho_k_[i];
  return d;
}

Matrix Representation::rho_of(const Matrix& a) const {
  const Vector c = s_.g_coords(a);
  Matrix d = Matrix::Zero(m_, m_);
  for (int i = 0; i < s_.dim_k(); ++i) d += c(i) * rho_k_[i];
  for (int i = 0; i < s_.dim_p(); ++i) d += c(s_.dim_k() + i) * rho_p_[i];
  return d;
}

Matrix Representation::rho_frame(int j) const { return rho_of(s_.frame_matrix(j)); }

RepresentationDiagnostics Representation::check(double tol) const {
  RepresentationDiagnostics d;
  std::vector<Matrix> g = s_.basis_k(), r = rho_k_;
  g.insert(g.end(), s_.basis_p().begin(), s_.basis_p().end());
  r.insert(r.end(), rho_p_.begin(), rho_p_.end());
  for (size_t i = 0; i < g.size(); ++i)
    for (size_t j = i + 1; j < g.size(); ++j) {
      const double scale = std::max(1.0, g[i].norm() * g[j].norm());
      const Matrix res = rho_of(bracket(g[i], g[j])) - bracket(r[i], r[j]);
      d.homomorphism = std::max(d.homomorphism, res.norm() / scale);
    }
  for (const auto& m : rho_k_) d.k_antisymmetry = std::max(d.k_antisymmetry, (m + m.transpose()).norm());
  for (const auto& m : rho_p_) d.p_symmetry = std::max(d.p_symmetry, (m - m.transpose()).norm());
  d.ok = d.homomorphism <= tol && d.k_antisymmetry <= tol && d.p_symmetry <= tol;
  return d;
}

Point make_point(const Representation& rep, const Vector& v) {
  if (v.size() != rep.dim_v())
    throw DimensionError("point has length " + std::to_string(v.size()) + ", representation space has dimension " +
                         std::to_string(rep.dim_v()));
  if (!v.allFinite()) throw InputError("point has non-finite entries");
  if (!rep.projective()) return Point{v};
  const double nv = v.norm();
  if (nv == 0.0) throw InputError("the zero vector is not a point of projective space");
  return Point{v / nv};
}

GroupElement GroupElement::identity(int dim_v) { return GroupElement{Matrix::Identity(dim_v, dim_v)}; }

GroupElement GroupElement::exp_p(const Representation& rep, const Direction& beta, double t) {
  return GroupElement{symmetric_exp(rep.rho(beta), t)};
}

GroupElement GroupElement::exp_k(const Representation& rep, const Vector& k_coeffs) {
  return GroupElement{general_exp(rep.rho_k_combination(k_coeffs))};
}

GroupElement GroupElement::exp_g(const Representation& rep, const Matrix& a) {
  return GroupElement{general_exp(rep.rho_of(a))};
}

GroupElement GroupElement::inverse() const {
  Eigen::FullPivLU<Matrix> lu(mat);
  if (!lu.isInvertible()) throw InputError("group element is numerically singular");
  return GroupElement{lu.inverse()};
}

Point GroupElement::apply(const Representation& rep, const Point& x) const {
  Vector y = mat * x.vec;
  if (rep.projective()) {
    const double ny = y.norm();
    if (ny == 0.0 || !std::isfinite(ny)) throw InputError("group element maps the point to zero");
    y /= ny;
  }
  return Point{y};
}

Vector fundamental_field(const Representation& rep, const Direction& beta, const Point& x) {
  const Matrix d = rep.rho(beta);
  Vector v = d * x.vec;
  if (rep.projective()) {
    const double nx2 = x.vec.squaredNorm();
    if (nx2 == 0.0) throw InputError("the zero vector is not a point of projective space");
    v -= (x.vec.dot(v) / nx2) * x.vec;
  }
  return v;
}

double moment_pairing(const Representation& rep, const Vector& x, const Matrix& rho_beta) {
  const double q = x.dot(rho_beta * x);
  if (!rep.projective()) return 0.5 * q;
  const double nx2 = x.squaredNorm();
  if (nx2 == 0.0) throw InputError("the zero vector is not a point of projective space");
  return q / nx2;
}

Direction gradient_map(const Representation& rep, const Point& x) {
  const auto& s = rep.structure();
  if (s.p_basis_degenerate()) throw InputError("basis_p is linearly dependent (singular Gram matrix)");
  if (x.vec.size() != rep.dim_v()) throw DimensionError("point length does not match dim V");
  // u_j = ⟨μ, P̂_j⟩ in orthonormal coordinates.
  Vector u(s.dim_p());
  for (int j = 0; j < s.dim_p(); ++j) u(j) = moment_pairing(rep, x.vec, rep.rho_p_orthonormal()[j]);
  return s.from_orthonormal(u);
}

double kempf_ness(const Representation& rep, const Point& x, const GroupElement& g) {
  const Vector gx = g.mat * x.vec;
  if (!rep.projective()) return 0.25 * (gx.squaredNorm() - x.vec.squaredNorm());
  const double nx2 = x.vec.squaredNorm();
  if (nx2 == 0.0) throw InputError("the zero vector is not a point of projective space");
  return 0.5 * std::log(gx.squaredNorm() / nx2);
}

double kempf_ness_derivative(const Representation& rep, const Point& x, const Direction& beta,
                             double t) {
  const Matrix d = rep.rho(beta);
  const Vector y = symmetric_exp(d, t) * x.vec;
  if (rep.projective() && y.squaredNorm() == 0.0)
    throw InputError("the zero vector is not a point of projective space");
  return moment_pairing(rep, y, d);
}

double field_speed_squared(const Representation& rep, const Direction& beta, const Point& x) {
  const Vector f = fundamental_field(rep, beta, x);
  if (!rep.projective()) return f.squaredNorm();
  return 2.0 * f.squaredNorm() / x.vec.squaredNorm();
}

double linear_growth_constant(const Representation& rep) {
  const auto& s = rep.structure();
  const int dp = s.dim_p();
  const auto& basis = rep.rho_p_orthonormal();
  if (dp == 0 || static_cast<int>(basis.size()) != dp) return 0.0;

  auto op = [&](const Vector& u) {
    Matrix d = Matrix::Zero(rep.dim_v(), rep.dim_v());
    for (int j = 0; j < dp; ++j) d += u(j) * basis[j];
    return d;
  };

  std::vector<Vector> starts;
  for (int j = 0; j < dp; ++j) {
    Vector e = Vector::Zero(dp);
    e(j) = 1.0;
    starts.push_back(e);
    starts.push_back(-e);
  }
  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> nd;
  for (int r = 0; r < 16; ++r) {
    Vector u(dp);
    for (int j = 0; j < dp; ++j) u(j) = nd(rng);
    if (u.norm() > 0) starts.push_back(u.normalized());
  }

  double best = 0.0;
  for (Vector u : starts) {
    double val = 0.0;
    for (int it = 0; it < 200; ++it) {
      Eigen::SelfAdjointEigenSolver<Matrix> es(op(u));
      const Vector& ev = es.eigenvalues();
      const Eigen::Index top = std::abs(ev(0)) >= std::abs(ev(ev.size() - 1)) ? 0 : ev.size() - 1;
      const double next = std::abs(ev(top));
      const Vector v = es.eigenvectors().col(top);
      Vector r(dp);
      for (int j = 0; j < dp; ++j) r(j) = v.dot(basis[j] * v);
      if (r.norm() == 0.0) {
        val = next;
        break;
      }
      u = r.normalized();
      if (it > 0 && next - val <= 1e-15 * std::max(1.0, next)) {
        val = std::max(val, next);
        break;
      }
      val = next;
    }
    best = std::max(best, val);
  }
  return best;
}

double distance(const Representation& rep, const Point& x, const Point& y) {
  if (!rep.projective()) return (x.vec - y.vec).norm();
  const double c = std::abs(x.vec.dot(y.vec)) / (x.vec.norm() * y.vec.norm());
  return std::acos(std::min(1.0, c));
}

Representation defining_representation(const ReductiveStructure& s, Space space) {
  return Representation(s, s.basis_k(), s.basis_p(), space);
}

Representation adjoint_representation(const ReductiveStructure& s, Space space) {
  const Matrix& f = s.g_frame();
  const int n = s.ambient_dim();
  auto ad = [&](const Matrix& b) {
    Matrix d(f.cols(), f.cols());
    for (Eigen::Index j = 0; j < f.cols(); ++j)
      d.col(j) = f.transpose() * flatten(bracket(b, unflatten(f.col(j), n)));
    return d;
  };
  std::vector<Matrix> rk, rp;
  for (const auto& b : s.basis_k()) rk.push_back(ad(b));
  for (const auto& b : s.basis_p()) rp.push_back(ad(b));
  return Representation(s, std::move(rk), std::move(rp), space);
}

namespace {

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

Representation sym_representation(const ReductiveStructure& s, int degree, Space space) {
  if (s.ambient_dim() != 2) throw InputError("sym_d needs a group of 2x2 matrices");
  if (degree < 1) throw InputError("sym_d needs degree >= 1");
  const int m = degree + 1;
  Vector sc(m);
  for (int i = 0; i < m; ++i) sc(i) = std::sqrt(binomial(degree, i));

  auto act = [&](const Matrix& a) {
    // Column i: image of v1^{d-i} v2^i under f ↦ −∇f·(a v), in monomial coordinates.
    Matrix mm = Matrix::Zero(m, m);
    for (int i = 0; i < m; ++i) {
      const double pa = degree - i, pc = i;
      mm(i, i) -= pa * a(0, 0) + pc * a(1, 1);
      if (i + 1 < m) mm(i + 1, i) -= pa * a(0, 1);
      if (i > 0) mm(i - 1, i) -= pc * a(1, 0);
    }
    return Matrix(sc.cwiseInverse().asDiagonal() * mm * sc.asDiagonal());
  };
  std::vector<Matrix> rk, rp;
  for (const auto& b : s.basis_k()) rk.push_back(act(b));
  for (const auto& b : s.basis_p()) rp.push_back(act(b));
  return Representation(s, std::move(rk), std::move(rp), space);
}

Vector adjoint_coordinates(const ReductiveStructure& s, const Matrix& a) {
  s.require_square(a, "adjoint point");
  return s.g_frame().transpose() * flatten(a);
}

Vector sym_coordinates(int degree, const Vector& monomial_coeffs) {
  if (monomial_coeffs.size() != degree + 1)
    throw DimensionError("binary form of degree " + std::to_string(degree) + " needs " +
                         std::to_string(degree + 1) + " coefficients");
  Vector y(degree + 1);
  for (int i = 0; i <= degree; ++i) y(i) = monomial_coeffs(i) / std::sqrt(binomial(degree, i));
  return y;
}

}  // namespace realgit
