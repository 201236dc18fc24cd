#pragma once

// Linear and projective actions of a reductive matrix group, the gradient
// map μ_p and the Kempf–Ness function Φ.

#include <string>
#include <vector>

#include "realgit/liealg.hpp"

namespace realgit {

enum class Space { Affine, Projective };

const char* to_string(Space s);

struct RepresentationDiagnostics {
  double homomorphism = 0.0;   // max ‖dρ([a,b]) − [dρ(a),dρ(b)]‖ over basis pairs
  double k_antisymmetry = 0.0; // max ‖dρ(b) + dρ(b)ᵀ‖, b ∈ basis_k
  double p_symmetry = 0.0;     // max ‖dρ(b) − dρ(b)ᵀ‖, b ∈ basis_p
  bool ok = false;
};

class Representation {
 public:
  Representation(ReductiveStructure s, std::vector<Matrix> rho_k, std::vector<Matrix> rho_p,
                 Space space);

  const ReductiveStructure& structure() const { return s_; }
  int dim_v() const { return m_; }
  Space space() const { return space_; }
  bool projective() const { return space_ == Space::Projective; }
  Representation with_space(Space s) const;

  const std::vector<Matrix>& rho_k() const { return rho_k_; }
  const std::vector<Matrix>& rho_p() const { return rho_p_; }

  /// dρ(β) = Σ cᵢ dρ(pᵢ); symmetric.
  Matrix rho(const Direction& beta) const;
  /// dρ of Σ cᵢ kᵢ.
  Matrix rho_k_combination(const Vector& coeffs) const;
  /// dρ of an ambient matrix in g (least-squares coordinates in basis_k ∪ basis_p).
  Matrix rho_of(const Matrix& a) const;
  /// dρ of the j-th orthonormal frame element of g (k part first).
  Matrix rho_frame(int j) const;

  /// dρ(P̂_j) for an orthonormal basis P̂ of p, matching ReductiveStructure::to_orthonormal.
  const std::vector<Matrix>& rho_p_orthonormal() const { return rho_p_on_; }

  RepresentationDiagnostics check(double tol = 1e-9) const;

 private:
  ReductiveStructure s_;
  int m_;
  std::vector<Matrix> rho_k_;
  std::vector<Matrix> rho_p_;
  std::vector<Matrix> rho_p_on_;
  Space space_;
};

/// A point of V (affine) or of the projective space of V (stored at unit norm).
struct Point {
  Vector vec;
};

/// Validates the length and, for projective spaces, normalizes. Throws
/// InputError for the zero vector in projective space.
Point make_point(const Representation& rep, const Vector& v);

/// An invertible matrix acting on V, built from exponentials of dρ and products.
struct GroupElement {
  Matrix mat;

  static GroupElement identity(int dim_v);
  /// exp(t·dρ(β)), β ∈ p, via the symmetric eigen-decomposition.
  static GroupElement exp_p(const Representation& rep, const Direction& beta, double t = 1.0);
  /// exp(dρ(ξ)) for ξ = Σ cᵢ kᵢ (orthogonal).
  static GroupElement exp_k(const Representation& rep, const Vector& k_coeffs);
  /// exp(dρ(a)) for an arbitrary ambient element a of g.
  static GroupElement exp_g(const Representation& rep, const Matrix& a);

  GroupElement operator*(const GroupElement& o) const { return GroupElement{mat * o.mat}; }
  GroupElement inverse() const;
  Point apply(const Representation& rep, const Point& x) const;
};

/// β_X(x): dρ(β)x (affine) or its tangent component at the unit vector x (projective).
Vector fundamental_field(const Representation& rep, const Direction& beta, const Point& x);

/// μ_p(x) ∈ p: ⟨μ_p(x),β⟩ = ½xᵀdρ(β)x (affine) or xᵀdρ(β)x/xᵀx (projective).
Direction gradient_map(const Representation& rep, const Point& x);

/// ⟨μ_p(x),β⟩ without solving the Gram system.
double moment_pairing(const Representation& rep, const Vector& x, const Matrix& rho_beta);

/// Φ(x,g) = ¼(‖gx‖² − ‖x‖²) (affine) or ½·log(‖gx‖²/‖x‖²) (projective).
double kempf_ness(const Representation& rep, const Point& x, const GroupElement& g);

/// d/dt Φ(x, exp(tβ)) = ⟨μ_p(exp(tβ)x), β⟩, evaluated directly.
double kempf_ness_derivative(const Representation& rep, const Point& x, const Direction& beta,
                             double t);

/// d/dt ⟨μ_p(exp(tβ)x), β⟩ at t = 0: ‖dρ(β)x‖² (affine) or 2‖dρ(β)x − (xᵀdρ(β)x)x‖²
/// at unit x (projective).
double field_speed_squared(const Representation& rep, const Direction& beta, const Point& x);

/// C = max over unit β ∈ p of ‖dρ(β)‖₂ (alternating maximization with multistarts).
double linear_growth_constant(const Representation& rep);

/// Euclidean distance (affine) or Fubini–Study angle (projective).
double distance(const Representation& rep, const Point& x, const Point& y);

/// Defining representation of a matrix group on ℝⁿ.
Representation defining_representation(const ReductiveStructure& s, Space space);
/// Adjoint representation on g, in the orthonormal frame ReductiveStructure::g_frame.
Representation adjoint_representation(const ReductiveStructure& s, Space space);
/// Binary forms of degree d for a 2×2 group, (g·f)(v) = f(g⁻¹v), in the
/// orthonormal basis √C(d,i)·v₁^{d−i}v₂^i.
Representation sym_representation(const ReductiveStructure& s, int degree, Space space);

/// Coordinates of an element of g in the adjoint representation space.
Vector adjoint_coordinates(const ReductiveStructure& s, const Matrix& a);
/// Orthonormal coordinates of Σ aᵢ v₁^{d−i}v₂^i.
Vector sym_coordinates(int degree, const Vector& monomial_coeffs);

}  // namespace realgit
