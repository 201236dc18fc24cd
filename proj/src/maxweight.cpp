#include "realgit/maxweight.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>

#include "nelder_mead.hpp"
#include "realgit/error.hpp"

namespace realgit {

std::vector<Vector> WeightDecomposition::components(const Vector& x) const {
  std::vector<Vector> out;
  for (const auto& b : bases) out.push_back(b * (b.transpose() * x));
  return out;
}

std::vector<double> WeightDecomposition::component_weights(const Vector& x, double noise_floor) const {
  const double cut = noise_floor * x.norm();
  std::vector<double> w;
  for (const auto& b : bases) {
    const double c = (b.transpose() * x).norm();
    w.push_back(c <= cut ? 0.0 : c * c);
  }
  return w;
}

WeightDecomposition weight_decomposition(const Representation& rep, const Direction& beta,
                                         double rel_gap) {
  WeightDecomposition wd;
  for (auto& c : clustered_eigen(rep.rho(beta), rel_gap)) {
    wd.eigenvalues.push_back(c.value);
    wd.bases.push_back(std::move(c.basis));
  }
  return wd;
}

namespace {

void require_finite(const Vector& x, double t) {
  if (!x.allFinite() || std::isnan(t)) throw InputError("NaN or infinite input to weight_curve");
}

double curve_from_weights(bool projective, const std::vector<double>& lam, const std::vector<double>& w,
                          double t) {
  if (!projective) {
    double s = 0.0;
    for (size_t i = 0; i < lam.size(); ++i)
      if (w[i] > 0.0 && lam[i] != 0.0) s += lam[i] * std::exp(2.0 * lam[i] * t) * w[i];
    return 0.5 * s;
  }
  double top = -std::numeric_limits<double>::infinity();
  double lam_max = -std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < lam.size(); ++i)
    if (w[i] > 0.0) {
      top = std::max(top, 2.0 * lam[i] * t + std::log(w[i]));
      lam_max = std::max(lam_max, lam[i]);
    }
  if (!std::isfinite(top)) throw InputError("the zero vector is not a point of projective space");
  // λ_max minus a nonnegative deficit, so saturated curves stay monotone in
  // floating point.
  double num = 0.0, den = 0.0;
  for (size_t i = 0; i < lam.size(); ++i) {
    if (w[i] <= 0.0) continue;
    const double e = std::exp(2.0 * lam[i] * t + std::log(w[i]) - top);
    num += (lam_max - lam[i]) * e;
    den += e;
  }
  return lam_max - num / den;
}

}  // namespace

double weight_curve(const Representation& rep, const WeightDecomposition& wd, const Vector& x,
                    double t) {
  require_finite(x, t);
  return curve_from_weights(rep.projective(), wd.eigenvalues, wd.component_weights(x), t);
}

double weight_curve(const Representation& rep, const Point& x, const Direction& beta, double t) {
  require_finite(x.vec, t);
  if (x.vec.size() != rep.dim_v()) throw DimensionError("point length does not match dim V");
  if (!rep.projective() && x.vec.norm() == 0.0) return 0.0;
  return weight_curve(rep, weight_decomposition(rep, beta), x.vec, t);
}

MaxWeight max_weight_numeric(const Representation& rep, const Point& x, const Direction& beta,
                             const MaxWeightOptions& opts) {
  MaxWeight r;
  r.method = WeightMethod::Numeric;
  if (!rep.projective() && x.vec.norm() == 0.0) return r;
  const WeightDecomposition wd = weight_decomposition(rep, beta);
  const std::vector<double> w = wd.component_weights(x.vec, opts.component_tol);
  auto curve = [&](double t) { return curve_from_weights(rep.projective(), wd.eigenvalues, w, t); };

  double lam_max = 0.0;
  for (double l : wd.eigenvalues) lam_max = std::max(lam_max, std::abs(l));
  const double scale = 1.0 + lam_max * (rep.projective() ? 1.0 : x.vec.squaredNorm());
  const double tol = opts.converge_tol * scale;
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * scale;

  const double v0 = curve(0.0);
  const double threshold = opts.divergence_factor * (1.0 + std::abs(v0));
  r.t_grid.push_back(0.0);
  r.samples.push_back(v0);

  double prev = v0, d_prev = std::numeric_limits<double>::infinity();
  int settled = 0;
  bool monotone = true;
  for (int k = 0; k <= opts.max_doublings; ++k) {
    const double t = std::ldexp(1.0, k);
    const double v = curve(t);
    r.t_grid.push_back(t);
    r.samples.push_back(v);
    if (v < prev - 1e-12 * (scale + std::abs(v))) monotone = false;
    if (std::isinf(v) || (v > threshold && v > prev)) {
      r.infinite = true;
      r.residual = v - prev;
      break;
    }
    const double d = std::abs(v - prev);
    if (d <= floor || (d <= tol && d <= 0.75 * d_prev))
      ++settled;
    else
      settled = 0;
    r.residual = d;
    prev = v;
    d_prev = d;
    if (settled >= 3 && t >= 16.0) {
      r.value = v;
      break;
    }
    if (k == opts.max_doublings) {
      r.indeterminate = true;
      r.value = v;
      r.warnings.push_back("weight curve neither converged nor diverged by t = " + std::to_string(t));
    }
  }
  if (!monotone) r.warnings.push_back("weight curve samples not monotone beyond rounding slack");
  return r;
}

MaxWeight max_weight_algebraic(const Representation& rep, const Point& x, const Direction& beta,
                               const MaxWeightOptions& opts) {
  MaxWeight r;
  r.method = WeightMethod::Algebraic;
  const double nx = x.vec.norm();
  if (!rep.projective() && nx == 0.0) return r;
  if (nx == 0.0) throw InputError("the zero vector is not a point of projective space");
  const WeightDecomposition wd = weight_decomposition(rep, beta);
  const double cut = opts.component_tol * nx;
  double top = -std::numeric_limits<double>::infinity();
  double smallest_kept = std::numeric_limits<double>::infinity();
  std::vector<double> comp(wd.bases.size());
  for (size_t i = 0; i < wd.bases.size(); ++i) {
    comp[i] = (wd.bases[i].transpose() * x.vec).norm();
    if (comp[i] <= cut) continue;
    smallest_kept = std::min(smallest_kept, comp[i]);
    top = std::max(top, wd.eigenvalues[i]);
  }
  // Only components that could change the answer count towards ambiguity:
  // positive weights (affine), or weights at or above the top level (projective).
  for (size_t i = 0; i < wd.bases.size(); ++i) {
    const bool matters = rep.projective() ? wd.eigenvalues[i] >= top : wd.eigenvalues[i] > 0.0;
    if (matters && comp[i] > cut / 10.0 && comp[i] < cut * 10.0) r.ambiguous = true;
  }
  r.residual = std::isfinite(smallest_kept) ? smallest_kept / nx : 0.0;
  if (r.ambiguous)
    r.warnings.push_back("a weight component lies within a factor 10 of the component tolerance");
  if (rep.projective()) {
    r.value = top;
  } else if (top > 0.0) {
    r.infinite = true;
  }
  return r;
}

MaxWeight boundary_weight(const Representation& rep, const Point& x, const Direction& beta_unit,
                          WeightMethod method, const MaxWeightOptions& opts) {
  const auto& s = rep.structure();
  const double nb = s.norm(beta_unit);
  if (nb == 0.0) throw InputError("boundary_weight needs a nonzero direction");
  Direction b = beta_unit;
  std::optional<std::string> warn;
  if (std::abs(nb - 1.0) > 1e-9) {
    b = Direction(beta_unit.coords / nb);
    warn = "direction rescaled to unit norm (norm was " + std::to_string(nb) + ")";
  }
  MaxWeight r = method == WeightMethod::Algebraic ? max_weight_algebraic(rep, x, b, opts)
                                                  : max_weight_numeric(rep, x, b, opts);
  if (warn) r.warnings.push_back(*warn);
  return r;
}

// ---------------------------------------------------------------------------
// Zero-set search

namespace {

struct Candidate {
  Vector u;  // orthonormal p-coordinates, unit
  MaxWeight weight;
};

double value_key(const MaxWeight& w) {
  return w.infinite ? std::numeric_limits<double>::infinity() : w.value;
}

class ZeroSearch {
 public:
  ZeroSearch(const Representation& rep, const Point& x, const ZeroSearchOptions& opts)
      : rep_(rep), s_(rep.structure()), x_(x.vec), opts_(opts), dp_(s_.dim_p()) {
    growth_ = linear_growth_constant(rep);
    if (growth_ <= 0.0) growth_ = 1.0;
    nx_ = x_.norm();
  }

  Matrix op(const Vector& u) const {
    Matrix d = Matrix::Zero(rep_.dim_v(), rep_.dim_v());
    for (int j = 0; j < dp_; ++j) d += u(j) * rep_.rho_p_orthonormal()[j];
    return d;
  }

  // λ(x, β, T) at β = u/‖u‖; the smooth surrogate of the boundary function.
  double surrogate(const Vector& u, double t) const {
    const double nu = u.norm();
    if (nu == 0.0) return std::numeric_limits<double>::max();
    Eigen::SelfAdjointEigenSolver<Matrix> es(op(u / nu));
    const Vector& lam = es.eigenvalues();
    const Vector y = es.eigenvectors().transpose() * x_;
    std::vector<double> l(lam.data(), lam.data() + lam.size()), w(y.size());
    for (Eigen::Index i = 0; i < y.size(); ++i) w[i] = y(i) * y(i);
    const double v = curve_from_weights(rep_.projective(), l, w, t);
    return std::isfinite(v) ? v : std::numeric_limits<double>::max();
  }

  Vector minimize(const Vector& u0) const {
    Vector u = u0.normalized();
    const double stages[] = {1.0, 4.0, 16.0};
    const double steps[] = {0.3, 0.1, 0.03};
    for (int k = 0; k < 3; ++k) {
      const double t = stages[k] / growth_;
      auto f = [&](const Vector& v) { return surrogate(v, t); };
      auto res = detail::nelder_mead(f, u, steps[k], opts_.evals_per_stage, 1e-12);
      if (res.x.norm() > 0) u = res.x.normalized();
    }
    return u;
  }

  // Projection of x onto the top-k eigenspace of dρ(u/‖u‖).
  Vector top_projection(const Vector& u, int k) const {
    Eigen::SelfAdjointEigenSolver<Matrix> es(op(u.normalized()));
    const Matrix q = es.eigenvectors().rightCols(k);
    return q * (q.transpose() * x_);
  }

  // Drives the components above the current significant level to zero.
  Vector snap(const Vector& u_in) const {
    Vector u = u_in.normalized();
    Eigen::SelfAdjointEigenSolver<Matrix> es(op(u));
    const Vector& lam = es.eigenvalues();
    const Vector y = es.eigenvectors().transpose() * x_;
    const auto m = lam.size();
    const double gap = 1e-8 * (1.0 + growth_);
    const double sig = opts_.snap_tol * nx_;

    double level = 0.0;
    if (rep_.projective()) {
      level = -std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < m; ++i)
        if (std::abs(y(i)) > sig) level = std::max(level, lam(i));
      if (!std::isfinite(level)) return u;
    }
    int k = 0;
    for (Eigen::Index i = 0; i < m; ++i)
      if (lam(i) > level + gap) ++k;
    if (k == 0) return u;
    if (y.tail(k).norm() > sig) return u;

    const int dt = dp_ - 1;
    if (dt <= 0) return u;
    for (int it = 0; it < 60; ++it) {
      const Vector r = top_projection(u, k);
      const double rn = r.norm();
      if (rn <= 1e-15 * std::max(1.0, nx_)) break;
      // Tangent frame at u: orthonormal complement of u.
      const Matrix tan = null_space(u.transpose(), 0.5);
      Matrix jac(r.size(), tan.cols());
      const double h = 1e-6;
      for (Eigen::Index j = 0; j < tan.cols(); ++j) {
        const Vector up = top_projection(u + h * tan.col(j), k);
        const Vector um = top_projection(u - h * tan.col(j), k);
        jac.col(j) = (up - um) / (2.0 * h);
      }
      const Vector step = -jac.completeOrthogonalDecomposition().solve(r);
      double a = 1.0;
      bool improved = false;
      for (int ls = 0; ls < 30; ++ls, a *= 0.5) {
        const Vector cand = (u + a * tan * step).normalized();
        if (top_projection(cand, k).norm() < rn) {
          u = cand;
          improved = true;
          break;
        }
      }
      if (!improved) break;
    }
    return u;
  }

  MaxWeight exact(const Vector& u) const {
    return max_weight_algebraic(rep_, Point{x_}, s_.from_orthonormal(u), opts_.weight);
  }

  std::vector<Vector> starts() const {
    std::vector<Vector> out;
    auto push_coords = [&](const Vector& c) {
      const Vector u = s_.to_orthonormal(Direction(c));
      if (u.norm() > 0) out.push_back(u.normalized());
    };
    // Rational grid in basis coordinates.
    if (dp_ <= 5) {
      int total = 1;
      for (int i = 0; i < dp_; ++i) total *= 3;
      for (int code = 0; code < total; ++code) {
        Vector c(dp_);
        int rem = code;
        for (int i = 0; i < dp_; ++i) {
          c(i) = static_cast<double>(rem % 3) - 1.0;
          rem /= 3;
        }
        if (c.cwiseAbs().sum() > 0) push_coords(c);
      }
    } else {
      for (int i = 0; i < dp_; ++i)
        for (double si : {1.0, -1.0}) {
          Vector c = Vector::Zero(dp_);
          c(i) = si;
          push_coords(c);
          for (int j = i + 1; j < dp_; ++j)
            for (double sj : {1.0, -1.0}) {
              Vector c2 = c;
              c2(j) = sj;
              push_coords(c2);
            }
        }
    }
    for (const auto& d : opts_.extra_seeds) push_coords(d.coords);
    // Directions of p fixing x, and the descent direction −μ.
    if (nx_ > 0) {
      Matrix fmap(rep_.dim_v(), dp_);
      for (int j = 0; j < dp_; ++j) fmap.col(j) = rep_.rho_p_orthonormal()[j] * x_;
      if (rep_.projective()) {
        const Vector xh = x_ / nx_;
        for (int j = 0; j < dp_; ++j) fmap.col(j) -= xh.dot(fmap.col(j)) * xh;
      }
      const Matrix ker = null_space(fmap, 1e-9 * growth_ * nx_);
      for (Eigen::Index j = 0; j < ker.cols(); ++j) {
        out.push_back(ker.col(j));
        out.push_back(-ker.col(j));
      }
      Vector mu(dp_);
      for (int j = 0; j < dp_; ++j)
        mu(j) = moment_pairing(rep_, x_, rep_.rho_p_orthonormal()[j]);
      if (mu.norm() > 1e-12 * growth_ * std::max(1.0, nx_ * nx_)) out.push_back(-mu.normalized());
    }
    std::mt19937_64 rng(opts_.seed);
    std::normal_distribution<double> nd;
    const int random = opts_.starts_per_dim * dp_;
    for (int r = 0; r < random; ++r) {
      Vector u(dp_);
      for (int j = 0; j < dp_; ++j) u(j) = nd(rng);
      if (u.norm() > 0) out.push_back(u.normalized());
    }
    return out;
  }

 private:
  const Representation& rep_;
  const ReductiveStructure& s_;
  Vector x_;
  ZeroSearchOptions opts_;
  int dp_;
  double growth_ = 1.0;
  double nx_ = 0.0;
};

bool lex_less(const Vector& a, const Vector& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i) < b(i)) return true;
    if (a(i) > b(i)) return false;
  }
  return false;
}

}  // namespace

ZeroSetResult zero_set_search(const Representation& rep, const Point& x, const ZeroSearchOptions& opts) {
  const auto& s = rep.structure();
  if (x.vec.size() != rep.dim_v()) throw DimensionError("point length does not match dim V");
  if (s.p_basis_degenerate()) throw InputError("basis_p is linearly dependent (singular Gram matrix)");
  ZeroSetResult res;
  const int dp = s.dim_p();
  if (dp == 0) {
    res.min_infinite = true;
    res.warnings.push_back("p is zero-dimensional: the boundary is empty");
    return res;
  }
  if (rep.projective() && x.vec.norm() == 0.0)
    throw InputError("the zero vector is not a point of projective space");

  ZeroSearch search(rep, x, opts);
  const std::vector<Vector> starts = search.starts();
  std::vector<Candidate> cands;
  if (!rep.projective() && x.vec.norm() == 0.0) {
    for (const auto& u : starts) cands.push_back({u, MaxWeight{}});
  } else {
    for (const auto& u0 : starts) {
      Vector u = search.snap(search.minimize(u0));
      u = u.unaryExpr([](double v) { return std::abs(v) <= 1e-14 ? 0.0 : v; }).normalized();
      cands.push_back({u, search.exact(u)});
    }
  }
  res.candidates = static_cast<int>(cands.size());

  std::vector<ScoredDirection> scored;
  for (const auto& c : cands)
    scored.push_back({s.from_orthonormal(c.u), c.weight});
  std::stable_sort(scored.begin(), scored.end(), [](const ScoredDirection& a, const ScoredDirection& b) {
    const double va = value_key(a.weight), vb = value_key(b.weight);
    if (va != vb) return va < vb;
    return lex_less(a.beta.coords, b.beta.coords);
  });

  const ScoredDirection& best = scored.front();
  res.min_infinite = best.weight.infinite;
  res.min_value = best.weight.infinite ? std::numeric_limits<double>::infinity() : best.weight.value;
  res.argmin = best.beta;
  res.argmin_ambiguous = best.weight.ambiguous;

  for (const auto& c : scored) {
    if (c.weight.infinite || std::abs(c.weight.value) > opts.zero_tol) continue;
    const Vector u = s.to_orthonormal(c.beta);
    bool dup = false;
    for (const auto& z : res.zeros) {
      const Vector v = s.to_orthonormal(z.beta);
      const double ang = std::acos(std::clamp(u.dot(v), -1.0, 1.0));
      if (ang <= opts.dedup_angle) {
        dup = true;
        break;
      }
    }
    if (!dup) res.zeros.push_back(c);
  }
  int ambiguous = 0;
  for (const auto& z : res.zeros)
    if (z.weight.ambiguous) ++ambiguous;
  if (ambiguous > 0)
    res.warnings.push_back(std::to_string(ambiguous) +
                           " zero direction(s) sit near the component tolerance");
  return res;
}

// ---------------------------------------------------------------------------
// Torus dimension

namespace {

// Continued-fraction snap of r to p/q with q ≤ qmax and |r − p/q| < tol.
bool rational_snap(double r, long qmax, double tol) {
  double x = r;
  long h0 = 1, h1 = 0, k0 = 0, k1 = 1;  // convergents h/k
  for (int it = 0; it < 64; ++it) {
    const double a = std::floor(x);
    if (std::abs(a) > 1e12) return false;
    const long ai = static_cast<long>(a);
    const long h = ai * h0 + h1, k = ai * k0 + k1;
    if (k > qmax) return false;
    if (std::abs(r - static_cast<double>(h) / static_cast<double>(k)) < tol) return true;
    h1 = h0;
    h0 = h;
    k1 = k0;
    k0 = k;
    const double frac = x - a;
    if (frac == 0.0) return true;
    x = 1.0 / frac;
  }
  return false;
}

}  // namespace

TorusDimension rational_rank(std::vector<double> freqs) {
  TorusDimension td;
  std::sort(freqs.begin(), freqs.end());
  double big = 0.0;
  for (double f : freqs) big = std::max(big, std::abs(f));
  const double gap = 1e-8 * (1.0 + big);
  for (double f : freqs) {
    if (std::abs(f) <= gap) continue;
    if (!td.frequencies.empty() && f - td.frequencies.back() <= gap) continue;
    td.frequencies.push_back(f);
  }
  const size_t n = td.frequencies.size();
  if (n == 0) {
    td.exact_rational = true;
    return td;
  }

  std::vector<double> r(n);
  for (size_t i = 0; i < n; ++i) r[i] = td.frequencies[i] / big;
  bool all_rational = true;
  for (double v : r)
    if (!rational_snap(v, 10000, 1e-9)) all_rational = false;
  if (all_rational) {
    td.dim = 1;
    td.exact_rational = true;
    return td;
  }

  // Integer relations Σ mᵢ rᵢ = 0 from the lattice (eᵢ, round(N·rᵢ)). A
  // genuine relation has a residual at rounding level; a spurious one with
  // coefficients ≤ kMaxCoeff leaves a residual far above kReject.
  const double scale = 1e12;
  constexpr long long kMaxCoeff = 1000;
  constexpr double kAccept = 1e-11;  // relative to ‖m‖₁
  constexpr double kReject = 1e-8;   // absolute, the rᵢ are normalized to |rᵢ| ≤ 1
  std::vector<std::vector<long long>> basis(n, std::vector<long long>(n + 1, 0));
  for (size_t i = 0; i < n; ++i) {
    basis[i][i] = 1;
    basis[i][n] = std::llround(scale * r[i]);
  }
  const auto red = lll_reduce(basis);
  int accepted = 0;
  for (const auto& row : red) {
    long long inf = 0, l1 = 0;
    long double resid = 0.0L;
    for (size_t i = 0; i < n; ++i) {
      inf = std::max(inf, std::llabs(row[i]));
      l1 += std::llabs(row[i]);
      resid += static_cast<long double>(row[i]) * r[i];
    }
    const double res = static_cast<double>(std::abs(resid));
    if (inf == 0 || inf > kMaxCoeff || res >= kReject) continue;
    if (res <= kAccept * static_cast<double>(l1)) {
      ++accepted;
      td.relations.emplace_back(row.begin(), row.begin() + static_cast<long>(n));
    } else {
      td.indeterminate = true;
    }
  }
  td.dim = static_cast<int>(n) - accepted;
  return td;
}

TorusDimension torus_dimension(const Representation& rep, const Direction& beta) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rep.rho(beta), Eigen::EigenvaluesOnly);
  const Vector& ev = es.eigenvalues();
  return rational_rank(std::vector<double>(ev.data(), ev.data() + ev.size()));
}

}  // namespace realgit
