#pragma once

// Stability classification (stable / polystable / semistable / unstable)
// with certificates: Kempf–Ness descent flow, stabilizer algebras,
// antipodal zero pairs and restriction to centralizer slices.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "realgit/maxweight.hpp"

namespace realgit {

struct StabilizerInfo {
  std::vector<Matrix> basis;        // orthonormal basis of g_x (ambient matrices)
  std::vector<Matrix> k_part;       // orthonormal basis of k_x
  std::vector<Direction> p_part;    // orthonormal basis of p_x
  int dim = 0;
  int dim_k = 0;
  int dim_p = 0;
  double theta_residual = 0.0;      // distance of θ(g_x) from g_x
  double threshold = 0.0;           // singular values ≤ threshold count as zero
  bool indeterminate = false;       // a singular value lies in (threshold, 10·threshold]
  std::vector<double> singular_values;
};

/// Kernel of ξ ↦ ξ_X(x) over g. rel_tol scales the rank threshold by ‖x‖ and
/// the largest ‖dρ(ξ)‖ over the orthonormal frame.
StabilizerInfo stabilizer_algebra(const Representation& rep, const Point& x, double rel_tol = 1e-8);

enum class FlowTermination { Converged, Stalled, Degenerated };
const char* to_string(FlowTermination t);

struct FlowOptions {
  double tol = 1e-8;
  int max_iters = 10000;
  int bisection_depth = 60;
  int refine_iters = 100;
  double loose_rel_tol = 1e-3;  // rank threshold for the stabilizer-jump test at the limit
};

struct FlowIterate {
  Vector point;
  double moment_norm = 0.0;
  double phi = 0.0;   // Φ(x₀, g_k), cumulative
  double step = 0.0;  // step taken from this iterate
};

struct FlowTrace {
  std::vector<FlowIterate> iterates;
  FlowTermination termination = FlowTermination::Stalled;
  GroupElement accumulated;  // final point = accumulated·x (projective: up to scale)
  Point final_point;
  double final_moment_norm = 0.0;
  int iterations = 0;
  int initial_stabilizer_dim = 0;
  int final_stabilizer_dim = 0;
  /// Set when the descent direction has no positive weight: the iterates run
  /// off along a one-parameter subgroup.
  std::optional<Direction> escape_direction;
  double escape_weight = 0.0;
  std::string diagnostics;
};

/// Steepest descent of Φ(x,·): x_{k+1} = exp(−s_k·dρ(μ_p(x_k)))·x_k with an
/// exact line search on the convex map s ↦ Φ(x_k, exp(−s·μ_p(x_k))).
FlowTrace kempf_ness_flow(const Representation& rep, const Point& x, const FlowOptions& opts = {});

struct PolystableCertificate {
  GroupElement g;
  Point y;                          // y = g·x, with μ_p(y) ≈ 0
  double moment_norm = 0.0;
  std::optional<Direction> xi;      // unit ξ ∈ p_y; absent when p_y = 0
  double xi_field_residual = 0.0;   // ‖dρ(ξ)y‖ (tangent part for projective)
  std::optional<MaxWeight> weight_plus;   // λ(y, ξ)
  std::optional<MaxWeight> weight_minus;  // λ(y, −ξ)
  int zeros_checked = 0;
  double max_zero_residual = 0.0;   // max ‖ρ(β)y‖ over checked zeros β of the boundary function at y
  bool zeros_in_py = true;
};

/// Certificate at the flow limit y. `zeros_at_y` are sampled zero directions
/// of the boundary function at y (may be empty).
std::optional<PolystableCertificate> polystable_certificate(const Representation& rep, const Point& x,
                                                            const FlowTrace& trace,
                                                            std::span<const ScoredDirection> zeros_at_y,
                                                            double zero_tol = 1e-6);

struct SliceProblem {
  Matrix basis_v;               // orthonormal basis of X^a (columns in V)
  std::vector<Direction> p_a;   // orthonormal basis of p^a, full-problem coordinates
  std::vector<Matrix> k_a;      // orthonormal basis of k^a
  Vector joint_weight;          // dρ(v)|X^a = joint_weight(i)·I for v = a[i]
  Representation rep;           // the restricted problem

  Vector to_slice(const Vector& x) const { return basis_v.transpose() * x; }
  Vector from_slice(const Vector& y) const { return basis_v * y; }
  /// Direction of the restricted problem written in full-problem coordinates.
  Direction embed(const Direction& d) const;
};

/// Restriction to X^a = joint eigenspace of dρ(a) (weight zero when affine,
/// the weight of `anchor` when projective), acted on by the centralizer g^a.
SliceProblem restrict_to_slice(const Representation& rep, std::span<const Direction> a,
                               const std::optional<Vector>& anchor = std::nullopt);

enum class Label { Stable, Polystable, SemistableOnly, Unstable, Indeterminate };
const char* to_string(Label l);

struct ClassifyOptions {
  ZeroSearchOptions zero;
  FlowOptions flow;
  double weight_tol = 1e-6;
  int max_depth = 4;
};

struct StabilityReport {
  Label label = Label::Indeterminate;
  bool certified = false;
  double min_weight = 0.0;
  bool min_weight_infinite = false;
  std::vector<Direction> zero_directions;
  std::optional<Direction> unstable_direction;
  std::optional<GroupElement> witness;
  std::optional<Direction> fixed_direction;
  int stab_dim = 0, stab_dim_k = 0, stab_dim_p = 0;
  bool flow_run = false;
  int flow_iterations = 0;
  double flow_final_moment_norm = 0.0;
  FlowTermination flow_termination = FlowTermination::Stalled;
  std::vector<std::string> notes;
};

StabilityReport classify(const Representation& rep, const Point& x, const ClassifyOptions& opts = {});

}  // namespace realgit
