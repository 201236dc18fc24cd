#include "realgit/stability.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "realgit/error.hpp"

namespace realgit {

const char* to_string(FlowTermination t) {
  switch (t) {
    case FlowTermination::Converged: return "Converged";
    case FlowTermination::Stalled: return "Stalled";
    case FlowTermination::Degenerated: return "Degenerated";
  }
  return "?";
}

const char* to_string(Label l) {
  switch (l) {
    case Label::Stable: return "Stable";
    case Label::Polystable: return "Polystable";
    case Label::SemistableOnly: return "SemistableOnly";
    case Label::Unstable: return "Unstable";
    case Label::Indeterminate: return "Indeterminate";
  }
  return "?";
}

namespace {

Vector field_of(const Representation& rep, const Matrix& rho_xi, const Vector& x) {
  Vector v = rho_xi * x;
  if (rep.projective()) {
    const double n2 = x.squaredNorm();
    if (n2 > 0) v -= (x.dot(v) / n2) * x;
  }
  return v;
}

}  // namespace

StabilizerInfo stabilizer_algebra(const Representation& rep, const Point& x, double rel_tol) {
  const auto& s = rep.structure();
  if (x.vec.size() != rep.dim_v()) throw DimensionError("point length does not match dim V");
  if (rep.projective() && x.vec.norm() == 0.0)
    throw InputError("the zero vector is not a point of projective space");
  const int n = s.ambient_dim();
  const Matrix& frame = s.g_frame();
  const auto dg = frame.cols();
  const int fk = s.orthonormal_k_count();

  Matrix fmap(rep.dim_v(), dg);
  double scale = 0.0;
  for (Eigen::Index j = 0; j < dg; ++j) {
    const Matrix r = rep.rho_frame(static_cast<int>(j));
    scale = std::max(scale, r.norm());
    fmap.col(j) = field_of(rep, r, x.vec);
  }
  StabilizerInfo out;
  out.threshold = rel_tol * x.vec.norm() * std::max(scale, 1e-300);

  Matrix ker;
  if (dg == 0) {
    ker = Matrix(0, 0);
  } else {
    Eigen::JacobiSVD<Matrix> svd(fmap, Eigen::ComputeFullV);
    const Vector& sv = svd.singularValues();
    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
      out.singular_values.push_back(sv(i));
      if (sv(i) > out.threshold) ++r;
      if (sv(i) > out.threshold && sv(i) <= 10.0 * out.threshold) out.indeterminate = true;
    }
    ker = svd.matrixV().rightCols(dg - r);
  }
  for (Eigen::Index j = 0; j < ker.cols(); ++j) out.basis.push_back(unflatten(frame * ker.col(j), n));
  out.dim = static_cast<int>(ker.cols());

  const Matrix kk = null_space(fmap.leftCols(fk), out.threshold);
  for (Eigen::Index j = 0; j < kk.cols(); ++j)
    out.k_part.push_back(unflatten(frame.leftCols(fk) * kk.col(j), n));
  const Matrix pk = null_space(fmap.rightCols(dg - fk), out.threshold);
  for (Eigen::Index j = 0; j < pk.cols(); ++j)
    out.p_part.push_back(s.p_coords(unflatten(frame.rightCols(dg - fk) * pk.col(j), n)));
  out.dim_k = static_cast<int>(out.k_part.size());
  out.dim_p = static_cast<int>(out.p_part.size());

  if (ker.cols() > 0) {
    Matrix theta_k = ker;
    theta_k.bottomRows(dg - fk) *= -1.0;
    out.theta_residual = (theta_k - ker * (ker.transpose() * theta_k)).norm();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Kempf–Ness flow

namespace {

// Φ(x, exp(t·dρ(d))) from the spectral weights of x, without cancellation.
double phi_increment(bool projective, const WeightDecomposition& wd, const std::vector<double>& w,
                     double t) {
  double s = 0.0, tot = 0.0;
  for (size_t i = 0; i < w.size(); ++i) {
    s += std::expm1(2.0 * wd.eigenvalues[i] * t) * w[i];
    tot += w[i];
  }
  if (!projective) return 0.25 * s;
  return 0.5 * std::log1p(s / tot);
}

}  // namespace

FlowTrace kempf_ness_flow(const Representation& rep, const Point& x, const FlowOptions& opts) {
  const auto& s = rep.structure();
  FlowTrace tr;
  tr.accumulated = GroupElement::identity(rep.dim_v());
  const Point x0 = make_point(rep, x.vec);
  tr.final_point = x0;
  tr.initial_stabilizer_dim = stabilizer_algebra(rep, x0).dim;
  tr.final_stabilizer_dim = tr.initial_stabilizer_dim;

  const double nx0 = x0.vec.norm();
  const bool affine = !rep.projective();
  if (affine && nx0 == 0.0) {
    tr.iterates.push_back({x0.vec, 0.0, 0.0, 0.0});
    tr.termination = FlowTermination::Converged;
    return tr;
  }

  double growth = linear_growth_constant(rep);
  if (growth <= 0.0) growth = 1.0;

  Vector xk = x0.vec;
  double phi = 0.0;
  bool converged = false, degenerated = false;
  int refine_left = opts.refine_iters;
  double target = 0.0;
  tr.termination = FlowTermination::Stalled;

  for (;;) {
    const Direction mu = gradient_map(rep, Point{xk});
    const double mn = s.norm(mu);
    tr.iterates.push_back({xk, mn, phi, 0.0});
    tr.final_moment_norm = mn;

    if (affine && xk.norm() <= 1e-12 * nx0) {
      degenerated = true;
      tr.diagnostics = "iterates collapsed to the origin";
      break;
    }
    const double conv_tol = affine ? opts.tol * std::min(1.0, xk.squaredNorm()) : opts.tol;
    if (mn <= conv_tol) {
      if (!converged) {
        converged = true;
        target = 1e-4 * conv_tol;
      }
      if (mn <= target || refine_left-- <= 0 || mn == 0.0) break;
    }
    if (tr.iterations >= opts.max_iters) {
      tr.diagnostics = "iteration limit reached";
      break;
    }

    const Direction d(-mu.coords);
    const WeightDecomposition wd = weight_decomposition(rep, d);
    const std::vector<double> w = wd.component_weights(xk, 0.0);
    const MaxWeight limit = max_weight_algebraic(rep, Point{xk}, d);
    if (!limit.infinite && limit.value <= 0.0) {
      // No positive weight along −μ: Φ decreases all the way to the limit point.
      tr.escape_direction = Direction(d.coords / mn);
      tr.escape_weight = limit.value / mn;
      const double cut = 1e-9 * xk.norm();
      Vector y = Vector::Zero(xk.size());
      for (size_t i = 0; i < wd.bases.size(); ++i) {
        const Vector c = wd.bases[i] * (wd.bases[i].transpose() * xk);
        if (c.norm() > cut && wd.eigenvalues[i] == limit.value) y += c;
      }
      if (rep.projective() && y.norm() > 0) y.normalize();
      xk = y;
      degenerated = true;
      tr.diagnostics = "descent direction has no positive weight; jumped to the limit point";
      break;
    }

    double hi = 1.0 / growth;
    // d/ds Φ(x_k, exp(s·dρ(d))) = λ(x_k, d, s), nondecreasing in s.
    auto slope = [&](double t) {
      double top = -std::numeric_limits<double>::infinity();
      if (!affine)
        for (size_t i = 0; i < w.size(); ++i)
          if (w[i] > 0) top = std::max(top, 2.0 * wd.eigenvalues[i] * t + std::log(w[i]));
      double num = 0.0, den = 0.0;
      for (size_t i = 0; i < w.size(); ++i) {
        if (w[i] <= 0.0) continue;
        const double e = affine ? std::exp(2.0 * wd.eigenvalues[i] * t) * w[i]
                                : std::exp(2.0 * wd.eigenvalues[i] * t + std::log(w[i]) - top);
        num += wd.eigenvalues[i] * e;
        den += e;
      }
      return affine ? 0.5 * num : num / den;
    };
    int guard = 0;
    while (slope(hi) < 0.0 && guard++ < 2000) hi *= 2.0;
    double lo = 0.0;
    for (int b = 0; b < opts.bisection_depth; ++b) {
      const double mid = 0.5 * (lo + hi);
      if (slope(mid) < 0.0)
        lo = mid;
      else
        hi = mid;
    }
    const double step = 0.5 * (lo + hi);
    if (!(step > 0.0) || !std::isfinite(step)) {
      tr.diagnostics = "step size underflow";
      break;
    }
    const double inc = phi_increment(rep.projective(), wd, w, step);
    const Matrix h = symmetric_exp(rep.rho(d), step);
    Vector next = h * xk;
    if (rep.projective()) next.normalize();
    if ((next - xk).norm() == 0.0) {
      tr.diagnostics = "step produced no change";
      break;
    }
    tr.iterates.back().step = step;
    phi += inc;
    xk = next;
    tr.accumulated = GroupElement{h} * tr.accumulated;
    ++tr.iterations;
  }

  tr.final_point = Point{xk};
  if (degenerated) {
    tr.termination = FlowTermination::Degenerated;
    tr.final_moment_norm = xk.norm() > 0 || affine ? s.norm(gradient_map(rep, Point{xk})) : 0.0;
    if (xk.norm() > 0 || affine)
      tr.final_stabilizer_dim = stabilizer_algebra(rep, Point{xk}, opts.loose_rel_tol).dim;
    return tr;
  }
  if (converged) {
    tr.final_stabilizer_dim = stabilizer_algebra(rep, Point{xk}, opts.loose_rel_tol).dim;
    if (tr.final_stabilizer_dim > tr.initial_stabilizer_dim) {
      tr.termination = FlowTermination::Degenerated;
      tr.diagnostics = "stabilizer dimension jumped at the limit";
    } else {
      tr.termination = FlowTermination::Converged;
    }
  }
  return tr;
}


// ---------------------------------------------------------------------------
// Certificates and slices

std::optional<PolystableCertificate> polystable_certificate(const Representation& rep, const Point& x,
                                                            const FlowTrace& trace,
                                                            std::span<const ScoredDirection> zeros_at_y,
                                                            double zero_tol) {
  (void)x;
  if (trace.termination != FlowTermination::Converged) return std::nullopt;
  PolystableCertificate c;
  c.g = trace.accumulated;
  c.y = trace.final_point;
  c.moment_norm = trace.final_moment_norm;

  const StabilizerInfo st = stabilizer_algebra(rep, c.y, 1e-6);
  double scale = 0.0;
  for (const auto& r : rep.rho_p_orthonormal()) scale = std::max(scale, r.norm());
  const double field_tol = 1e-6 * std::max(1.0, scale) * std::max(1.0, c.y.vec.norm());

  if (!st.p_part.empty()) {
    const Direction xi = rep.structure().normalized(st.p_part.front());
    c.xi_field_residual = fundamental_field(rep, xi, c.y).norm();
    c.weight_plus = boundary_weight(rep, c.y, xi);
    c.weight_minus = boundary_weight(rep, c.y, Direction(-xi.coords));
    auto is_zero = [&](const MaxWeight& w) { return !w.infinite && std::abs(w.value) <= zero_tol; };
    if (c.xi_field_residual > field_tol || !is_zero(*c.weight_plus) || !is_zero(*c.weight_minus))
      return std::nullopt;
    c.xi = xi;
  }

  for (const auto& z : zeros_at_y) {
    const double r = fundamental_field(rep, z.beta, c.y).norm();
    c.max_zero_residual = std::max(c.max_zero_residual, r);
    ++c.zeros_checked;
  }
  c.zeros_in_py = c.max_zero_residual <= field_tol;
  return c;
}

Direction SliceProblem::embed(const Direction& d) const {
  if (d.coords.size() != static_cast<Eigen::Index>(p_a.size()))
    throw DimensionError("slice direction length does not match dim p^a");
  Vector c = Vector::Zero(p_a.empty() ? 0 : p_a.front().coords.size());
  for (size_t i = 0; i < p_a.size(); ++i) c += d.coords(static_cast<Eigen::Index>(i)) * p_a[i].coords;
  return Direction(c);
}

namespace {

SliceProblem build_slice(const Representation& rep, std::span<const Direction> a,
                         const std::optional<Vector>& anchor) {
  const auto& s = rep.structure();
  const int m = rep.dim_v();
  std::vector<Matrix> am;
  double scale = 1.0;
  for (const auto& v : a) {
    am.push_back(s.p_matrix(v));
    scale = std::max(scale, rep.rho(v).norm());
  }
  for (size_t i = 0; i < am.size(); ++i)
    for (size_t j = i + 1; j < am.size(); ++j)
      if (bracket(am[i], am[j]).norm() > 1e-9 * (1.0 + am[i].norm() * am[j].norm()))
        throw InputError("slice generators do not commute");

  Vector chi = Vector::Zero(static_cast<Eigen::Index>(a.size()));
  if (anchor) {
    if (anchor->size() != m) throw DimensionError("anchor length does not match dim V");
    if (rep.projective()) {
      const double n2 = anchor->squaredNorm();
      if (n2 == 0.0) throw InputError("the zero vector is not a point of projective space");
      for (size_t i = 0; i < a.size(); ++i)
        chi(static_cast<Eigen::Index>(i)) = anchor->dot(rep.rho(a[i]) * *anchor) / n2;
    }
  }

  Matrix q;
  if (a.empty()) {
    q = Matrix::Identity(m, m);
  } else {
    Matrix stacked(static_cast<Eigen::Index>(a.size()) * m, m);
    for (size_t i = 0; i < a.size(); ++i)
      stacked.middleRows(static_cast<Eigen::Index>(i) * m, m) =
          rep.rho(a[i]) - chi(static_cast<Eigen::Index>(i)) * Matrix::Identity(m, m);
    q = null_space(stacked, 1e-9 * scale);
  }
  if (q.cols() == 0) throw InputError("the fixed-point set X^a is {0}");
  if (anchor && (*anchor - q * (q.transpose() * *anchor)).norm() > 1e-8 * std::max(1.0, anchor->norm()))
    throw InputError("anchor point is not fixed by the slice generators");

  std::vector<Direction> pa = centralizer_in_p(s, a);
  std::vector<Matrix> ka = centralizer_in_k(s, a);
  std::vector<Matrix> pa_mats;
  for (const auto& d : pa) pa_mats.push_back(s.p_matrix(d));
  ReductiveStructure sub(s.ambient_dim(), ka, pa_mats);

  // Entries at rounding level are cleared so that exactly-trivial actions stay trivial.
  double full = 0.0;
  for (const auto& r : rep.rho_p_orthonormal()) full = std::max(full, r.norm());
  const double chop = 1e-12 * std::max(1.0, full);
  auto restrict = [&](const Matrix& r) {
    Matrix out = q.transpose() * r * q;
    out = out.unaryExpr([&](double v) { return std::abs(v) <= chop ? 0.0 : v; });
    return out;
  };
  std::vector<Matrix> rk, rp;
  for (const auto& k : ka) rk.push_back(restrict(rep.rho_of(k)));
  for (const auto& d : pa) rp.push_back(restrict(rep.rho(d)));
  Representation r(std::move(sub), std::move(rk), std::move(rp), rep.space());
  return SliceProblem{q, std::move(pa), std::move(ka), chi, std::move(r)};
}

}  // namespace

SliceProblem restrict_to_slice(const Representation& rep, std::span<const Direction> a,
                               const std::optional<Vector>& anchor) {
  return build_slice(rep, a, anchor);
}

// ---------------------------------------------------------------------------
// Classification

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// lim_{t→∞} exp(t·dρ(β))x for a zero direction β: the top-weight part that survives.
// Sampled zeros are accurate to about 1e-8 in angle and the surviving part
// moves linearly with the angle, hence the looser cut.
Vector hilbert_mumford_limit(const Representation& rep, const Vector& x, const Direction& beta) {
  const WeightDecomposition wd = weight_decomposition(rep, beta);
  const MaxWeight lim = max_weight_algebraic(rep, Point{x}, beta);
  const double cut = 1e-6 * x.norm();
  Vector y = Vector::Zero(x.size());
  const double level = rep.projective() ? lim.value : 0.0;
  for (size_t i = 0; i < wd.bases.size(); ++i) {
    const Vector c = wd.bases[i] * (wd.bases[i].transpose() * x);
    if (c.norm() > cut && wd.eigenvalues[i] == level) y += c;
  }
  if (rep.projective() && y.norm() > 0) y.normalize();
  return y;
}

StabilityReport classify_impl(const Representation& rep, const Point& x, const ClassifyOptions& opts,
                              int depth) {
  const auto& s = rep.structure();
  StabilityReport r;
  const StabilizerInfo st = stabilizer_algebra(rep, x);
  r.stab_dim = st.dim;
  r.stab_dim_k = st.dim_k;
  r.stab_dim_p = st.dim_p;
  if (st.indeterminate) r.notes.push_back("stabilizer rank is close to the singular-value threshold");

  const ZeroSetResult zs = zero_set_search(rep, x, opts.zero);
  r.min_weight_infinite = zs.min_infinite;
  r.min_weight = zs.min_value;
  for (const auto& z : zs.zeros) r.zero_directions.push_back(z.beta);
  for (const auto& w : zs.warnings) r.notes.push_back(w);

  if (!zs.min_infinite && zs.min_value < -opts.weight_tol) {
    r.label = Label::Unstable;
    r.unstable_direction = zs.argmin;
    r.certified = !zs.argmin_ambiguous;
    r.notes.push_back("direction with negative maximal weight " + fmt(zs.min_value));
    return r;
  }

  if (!rep.projective() && x.vec.norm() == 0.0) {
    r.label = Label::Polystable;
    r.certified = true;
    r.witness = GroupElement::identity(rep.dim_v());
    r.flow_run = true;
    r.flow_termination = FlowTermination::Converged;
    if (s.dim_p() > 0) {
      Vector e = Vector::Zero(s.dim_p());
      e(0) = 1.0;
      r.fixed_direction = s.from_orthonormal(e);
    }
    r.notes.push_back("the origin is fixed by G");
    return r;
  }

  const FlowTrace flow = kempf_ness_flow(rep, x, opts.flow);
  r.flow_run = true;
  r.flow_iterations = flow.iterations;
  r.flow_final_moment_norm = flow.final_moment_norm;
  r.flow_termination = flow.termination;
  if (!flow.diagnostics.empty()) r.notes.push_back("flow: " + flow.diagnostics);

  if (flow.escape_direction && flow.escape_weight < -opts.weight_tol) {
    // The escape direction is a zero-free descent ray from a point of the orbit.
    r.label = Label::Unstable;
    r.certified = true;
    r.notes.push_back("flow found a direction of negative weight " + fmt(flow.escape_weight) +
                      " at an orbit point");
    r.min_weight = std::min(r.min_weight, flow.escape_weight);
    r.min_weight_infinite = false;
    return r;
  }

  switch (flow.termination) {
    case FlowTermination::Stalled:
      r.label = Label::Indeterminate;
      r.notes.push_back("flow stalled after " + std::to_string(flow.iterations) + " iterations");
      return r;

    case FlowTermination::Converged: {
      const StabilizerInfo sy = stabilizer_algebra(rep, flow.final_point, 1e-6);
      r.witness = flow.accumulated;
      if (sy.indeterminate) {
        r.label = Label::Indeterminate;
        r.notes.push_back("stabilizer rank ambiguous at the flow limit");
        return r;
      }
      r.label = sy.dim_p == 0 ? Label::Stable : Label::Polystable;
      r.certified = true;
      if (sy.theta_residual > 1e-6)
        r.notes.push_back("stabilizer at the flow limit is not theta-stable (residual " +
                          fmt(sy.theta_residual) + ")");

      std::vector<ScoredDirection> zeros_y;
      if (flow.iterations == 0) {
        zeros_y = zs.zeros;
      } else {
        ZeroSearchOptions zo = opts.zero;
        zo.starts_per_dim = std::max(1, zo.starts_per_dim / 8);
        zeros_y = zero_set_search(rep, flow.final_point, zo).zeros;
      }
      const auto cert = polystable_certificate(rep, x, flow, zeros_y, opts.weight_tol);
      if (cert) {
        if (cert->xi) r.fixed_direction = cert->xi;
        if (!cert->zeros_in_py)
          r.notes.push_back("a sampled zero direction at the witness does not fix it (residual " +
                            fmt(cert->max_zero_residual) + ")");
      } else if (r.label == Label::Polystable) {
        r.notes.push_back("no antipodal zero pair found at the witness");
      }
      if (r.label == Label::Stable && !zs.min_infinite && zs.min_value <= opts.weight_tol)
        r.notes.push_back("sampled minimum weight " + fmt(zs.min_value) +
                          " is within tolerance of zero although the stabilizer at the witness is compact");
      if (r.label == Label::Polystable && zs.zeros.empty())
        r.notes.push_back("zero-set search found no zero direction for a polystable point");
      return r;
    }

    case FlowTermination::Degenerated:
      break;
  }

  r.notes.push_back("flow left the orbit: stabilizer dimension " + std::to_string(flow.initial_stabilizer_dim) +
                    " -> " + std::to_string(flow.final_stabilizer_dim));
  if (depth >= opts.max_depth) {
    r.label = Label::Indeterminate;
    r.notes.push_back("slice recursion depth limit reached");
    return r;
  }
  if (zs.zeros.empty()) {
    r.label = Label::SemistableOnly;
    r.certified = false;
    r.notes.push_back("no sampled zero direction to build a slice from");
    return r;
  }

  // Zero direction whose torus closure is largest.
  size_t pick = 0;
  int best_dim = -1;
  for (size_t i = 0; i < zs.zeros.size(); ++i) {
    const TorusDimension td = torus_dimension(rep, zs.zeros[i].beta);
    if (td.dim > best_dim) {
      best_dim = td.dim;
      pick = i;
    }
  }
  const Direction beta = zs.zeros[pick].beta;
  const Vector y = hilbert_mumford_limit(rep, x.vec, beta);

  StabilityReport sub;
  int dim_y = 0;
  if (!rep.projective() && y.norm() <= 1e-12 * x.vec.norm()) {
    sub.label = Label::Polystable;
    sub.certified = true;
    dim_y = s.dim_g();
  } else {
    const Direction a[] = {beta};
    const SliceProblem slice = restrict_to_slice(rep, a, y);
    sub = classify_impl(slice.rep, make_point(slice.rep, slice.to_slice(y)), opts, depth + 1);
    dim_y = stabilizer_algebra(rep, make_point(rep, y)).dim;
  }
  r.notes.push_back("limit along a zero direction classified " + std::string(to_string(sub.label)) +
                    " in its slice (stabilizer dimension " + std::to_string(dim_y) + ")");

  switch (sub.label) {
    case Label::Indeterminate:
      r.label = Label::Indeterminate;
      for (const auto& n : sub.notes) r.notes.push_back("slice: " + n);
      break;
    case Label::Stable:
    case Label::Polystable:
      if (dim_y == st.dim) {
        r.label = Label::Polystable;
        r.certified = false;
        r.notes.push_back("limit has the same stabilizer dimension; polystability is sampled evidence");
      } else {
        r.label = Label::SemistableOnly;
        r.certified = sub.certified;
      }
      break;
    case Label::SemistableOnly:
      r.label = Label::SemistableOnly;
      r.certified = sub.certified;
      break;
    case Label::Unstable:
      r.label = Label::SemistableOnly;
      r.certified = false;
      r.notes.push_back("slice limit classified unstable; semistability rests on the sampled minimum weight");
      break;
  }
  return r;
}

}  // namespace

StabilityReport classify(const Representation& rep, const Point& x, const ClassifyOptions& opts) {
  return classify_impl(rep, make_point(rep, x.vec), opts, 0);
}

}  // namespace realgit
