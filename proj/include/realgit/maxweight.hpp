#pragma once

// Maximal weights λ(x,β) = lim_{t→∞} ⟨μ_p(exp(tβ)x), β⟩, the boundary function
// on the unit sphere of p, zero-set search and torus-closure dimensions.

#include <cstdint>
#include <string>
#include <vector>

#include "realgit/action.hpp"

namespace realgit {

/// Spectral data of dρ(β): distinct eigenvalues (ascending) and orthonormal
/// eigenspace bases.
struct WeightDecomposition {
  std::vector<double> eigenvalues;
  std::vector<Matrix> bases;

  Matrix projector(size_t i) const { return bases[i] * bases[i].transpose(); }
  /// P_i·x for each eigenspace.
  std::vector<Vector> components(const Vector& x) const;
  /// ‖P_i·x‖² with components below noise_floor·‖x‖ set to zero.
  std::vector<double> component_weights(const Vector& x, double noise_floor = 1e-12) const;
};

WeightDecomposition weight_decomposition(const Representation& rep, const Direction& beta,
                                         double rel_gap = 1e-8);

/// λ(x,β,t) evaluated in the eigencoordinates of dρ(β).
double weight_curve(const Representation& rep, const Point& x, const Direction& beta, double t);
double weight_curve(const Representation& rep, const WeightDecomposition& wd, const Vector& x,
                    double t);

enum class WeightMethod { Numeric, Algebraic };

struct MaxWeight {
  double value = 0.0;  // meaningful only when !infinite
  bool infinite = false;
  WeightMethod method = WeightMethod::Algebraic;
  bool indeterminate = false;
  bool ambiguous = false;      // a component norm sits within 10× of the component tolerance
  std::vector<double> t_grid;  // numeric method: sampled times
  std::vector<double> samples; // numeric method: λ(x,β,t) on t_grid
  double residual = 0.0;       // numeric: last successive difference; algebraic: smallest kept component
  std::vector<std::string> warnings;
};

struct MaxWeightOptions {
  double component_tol = 1e-9;  // relative to ‖x‖
  double converge_tol = 1e-11;  // successive-difference tolerance, relative to 1 + spectral scale
  double divergence_factor = 1e6;
  int max_doublings = 42;       // t_max = 2^max_doublings
};

MaxWeight max_weight_numeric(const Representation& rep, const Point& x, const Direction& beta,
                             const MaxWeightOptions& opts = {});
MaxWeight max_weight_algebraic(const Representation& rep, const Point& x, const Direction& beta,
                               const MaxWeightOptions& opts = {});

/// Value of the boundary function at the boundary point labelled by a unit β:
/// λ(x, β), i.e. the asymptotic slope of Φ(x, exp(tβ)). Non-unit input is
/// rescaled to unit length with a warning.
MaxWeight boundary_weight(const Representation& rep, const Point& x, const Direction& beta_unit,
                          WeightMethod method = WeightMethod::Algebraic,
                          const MaxWeightOptions& opts = {});

struct ZeroSearchOptions {
  std::uint64_t seed = 0;
  int starts_per_dim = 64;
  double zero_tol = 1e-6;
  double dedup_angle = 1e-6;
  double snap_tol = 1e-3;        // relative residual below which Gauss–Newton snapping is tried
  int evals_per_stage = 400;
  std::vector<Direction> extra_seeds;
  MaxWeightOptions weight;
};

struct ScoredDirection {
  Direction beta;  // unit
  MaxWeight weight;
};

struct ZeroSetResult {
  double min_value = 0.0;
  bool min_infinite = false;
  Direction argmin;
  bool argmin_ambiguous = false;
  std::vector<ScoredDirection> zeros;  // sorted by value, then lexicographically
  int candidates = 0;
  std::vector<std::string> warnings;
};

/// Multi-start minimization of β ↦ λ(x,β) over the unit sphere of p.
ZeroSetResult zero_set_search(const Representation& rep, const Point& x,
                              const ZeroSearchOptions& opts = {});

struct TorusDimension {
  int dim = 0;
  bool indeterminate = false;
  bool exact_rational = false;
  std::vector<double> frequencies;  // distinct nonzero eigenvalues of dρ(β)
  std::vector<std::vector<long>> relations;
};

/// dim_ℚ of the span of the distinct eigenvalues of dρ(β).
TorusDimension torus_dimension(const Representation& rep, const Direction& beta);
/// Same, for an explicit list of frequencies.
TorusDimension rational_rank(std::vector<double> freqs);

/// Integer relation search over exact integers (LLL, δ = 0.99). Rows of the
/// returned matrix are the reduced basis.
std::vector<std::vector<long long>> lll_reduce(const std::vector<std::vector<long long>>& basis,
                                               double delta = 0.99);

}  // namespace realgit
