#pragma once

// Matrix Lie-algebra substrate: a real reductive algebra g = k ⊕ p given by
// explicit bases, with the trace form ⟨A,B⟩ = trace(A·Bᵀ), brackets,
// ad-eigenspaces and the parabolic/Levi/nilradical splittings of an element
// of p.

#include <span>
#include <string>
#include <vector>

#include "realgit/linalg.hpp"

namespace realgit {

/// An element of p written in the coordinates of ReductiveStructure::basis_p.
/// A unit-norm direction represents a point of the boundary at infinity of
/// G/K.
struct Direction {
  Vector coords;

  Direction() = default;
  explicit Direction(Vector c) : coords(std::move(c)) {}
};

class ReductiveStructure {
 public:
  ReductiveStructure(int ambient_dim, std::vector<Matrix> basis_k, std::vector<Matrix> basis_p);

  int ambient_dim() const { return n_; }
  int dim_k() const { return static_cast<int>(basis_k_.size()); }
  int dim_p() const { return static_cast<int>(basis_p_.size()); }
  int dim_g() const { return dim_k() + dim_p(); }

  const std::vector<Matrix>& basis_k() const { return basis_k_; }
  const std::vector<Matrix>& basis_p() const { return basis_p_; }

  /// Gram matrix ⟨p_i, p_j⟩ of basis_p.
  const Matrix& gram_p() const { return gram_p_; }
  bool p_basis_degenerate() const { return p_degenerate_; }

  /// Σ cᵢ pᵢ.
  Matrix p_matrix(const Direction& beta) const;
  /// Orthogonal projection of an ambient matrix onto span(basis_p), in coordinates.
  Direction p_coords(const Matrix& m) const;
  double inner(const Direction& a, const Direction& b) const;
  double norm(const Direction& beta) const;
  Direction normalized(const Direction& beta) const;

  /// Orthonormal coordinates u on p (u = Lᵀc with gram_p = L·Lᵀ) and back.
  Vector to_orthonormal(const Direction& beta) const;
  Direction from_orthonormal(const Vector& u) const;

  /// Orthonormal basis of g as flattened ambient matrices (columns). For a
  /// compatible structure the first orthonormal_k_count() columns span k and
  /// the rest span p.
  const Matrix& g_frame() const { return g_frame_; }
  int orthonormal_k_count() const { return frame_k_; }
  Matrix frame_matrix(int j) const;

  /// Orthonormal bases of span(basis_k) and span(basis_p), flattened columns.
  const Matrix& k_frame() const { return k_frame_; }
  const Matrix& p_frame() const { return p_frame_; }

  /// Coordinates of an ambient matrix in the concatenated basis
  /// (basis_k then basis_p), least squares.
  Vector g_coords(const Matrix& m) const;

  void require_square(const Matrix& m, const char* what) const;

 private:
  int n_;
  std::vector<Matrix> basis_k_;
  std::vector<Matrix> basis_p_;
  Matrix gram_p_;
  Matrix chol_l_;  // lower Cholesky factor of gram_p_
  bool p_degenerate_ = false;
  Matrix g_frame_;
  Matrix k_frame_;
  Matrix p_frame_;
  int frame_k_ = 0;
  Matrix g_pinv_;  // pseudo-inverse of the flattened concatenated basis
};

/// θ(A) = −Aᵀ.
Matrix cartan_involution(const ReductiveStructure& s, const Matrix& a);

struct StructureDiagnostics {
  double closure_kk = 0.0;    // max distance of [k_i,k_j] from k
  double closure_kp = 0.0;    // max distance of [k_i,p_j] from p
  double closure_pp = 0.0;    // max distance of [p_i,p_j] from k
  double theta_k = 0.0;       // max ‖θ(b) − b‖ over basis_k
  double theta_p = 0.0;       // max ‖θ(b) + b‖ over basis_p
  double ad_invariance = 0.0; // max |⟨[ξ,A],B⟩ + ⟨A,[ξ,B]⟩|, ξ ∈ k
  double jacobi = 0.0;        // max Jacobi residual on basis triples
  int rank_deficit = 0;       // dim g − rank(basis_k ∪ basis_p)
  double tolerance = 0.0;
  bool ok = false;
  std::string convention;
};

/// Residuals are computed on unit-normalized basis elements, so they are
/// scale free. All residuals ≤ tol and no rank deficit ⇒ ok.
StructureDiagnostics check_compatible_structure(const ReductiveStructure& s, double tol = 1e-9);

struct AdEigenspace {
  double eigenvalue = 0.0;
  std::vector<Matrix> basis;  // orthonormal for the trace form
};

/// Real spectral decomposition of ad(β) on g, eigenvalues ascending.
/// Throws InputError when β is not (numerically) in p.
std::vector<AdEigenspace> ad_eigenspaces(const ReductiveStructure& s, const Direction& beta,
                                         double rel_gap = 1e-8);

struct SubalgebraSplit {
  std::vector<Matrix> levi;             // g^β
  std::vector<Matrix> nilradical_plus;  // r^{β+}
  std::vector<Matrix> nilradical_minus; // r^{β−} = θ(r^{β+})
  std::vector<Matrix> parabolic_plus;   // g^{β+} = g^β ⊕ r^{β+}
};

SubalgebraSplit parabolic_subalgebra(const ReductiveStructure& s, const Direction& beta);

/// Orthonormal basis of p^E = {x ∈ p : [x,e] = 0 for all e ∈ E}.
std::vector<Direction> centralizer_in_p(const ReductiveStructure& s, std::span<const Direction> e);
/// Orthonormal basis (ambient matrices) of k^E.
std::vector<Matrix> centralizer_in_k(const ReductiveStructure& s, std::span<const Direction> e);

struct GlobalDecomposition {
  bool holds = false;
  int dim_g = 0;
  int dim_k = 0;
  int dim_parabolic = 0;
  int dim_sum = 0;           // dim(k + g^{β+})
  int dim_intersection = 0;  // dim(k ∩ g^{β+})
  int dim_k_beta = 0;        // dim k^β
};

/// Infinitesimal form of G = K·G^{β+}: k + g^{β+} = g, with k ∩ g^{β+} = k^β.
GlobalDecomposition check_global_decomposition(const ReductiveStructure& s, const Direction& beta);

/// Ad(k)β = k·β·kᵀ for an orthogonal ambient matrix k.
Direction adjoint_action(const ReductiveStructure& s, const Matrix& k, const Direction& beta);

/// sl(n,ℝ) with k = so(n) (basis E_ij − E_ji, i<j) and p = symmetric
/// traceless matrices (basis E_ii − E_{i+1,i+1}, then E_ij + E_ji, i<j).
ReductiveStructure sl_preset(int n);

}  // namespace realgit
