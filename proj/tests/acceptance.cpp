// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include "helpers.hpp"
#include "realgit/cli.hpp"

using namespace realgit;
using namespace rt;

namespace {

const double kR2 = std::sqrt(2.0);

struct Preset {
  std::string name;
  Representation rep;
};

std::vector<Preset> presets(Space space) {
  const std::string suffix = space == Space::Affine ? "" : "/proj";
  std::vector<Preset> ps;
  for (int n : {2, 3, 4}) {
    ps.push_back({"sl" + std::to_string(n) + "-defining" + suffix, defining_representation(sl_preset(n), space)});
    ps.push_back({"sl" + std::to_string(n) + "-adjoint" + suffix, adjoint_representation(sl_preset(n), space)});
  }
  for (int d : {2, 3})
    ps.push_back({"sl2-sym" + std::to_string(d) + suffix, sym_representation(sl_preset(2), d, space)});
  return ps;
}

std::vector<Preset> all_presets() {
  auto ps = presets(Space::Affine);
  for (auto& p : presets(Space::Projective)) ps.push_back(std::move(p));
  return ps;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int failures = 0;

void report(int id, const char* name, bool ok, const std::string& detail) {
  std::printf("criterion %2d %-28s %s  %s\n", id, name, ok ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

// Keeps only eigencomponents of dρ(β) below a random cutoff half the time,
// so that finite affine weights are sampled too.
Vector biased_point(std::mt19937_64& rng, const Representation& rep, const Direction& beta) {
  Vector x = gaussian(rng, rep.dim_v());
  if (rng() % 2 == 0) return x;
  Eigen::SelfAdjointEigenSolver<Matrix> es(rep.rho(beta));
  const int keep = 1 + static_cast<int>(rng() % static_cast<unsigned>(rep.dim_v()));
  const Matrix q = es.eigenvectors().leftCols(keep);
  return q * (q.transpose() * x);
}

void gradient_identity() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(1001);
  double worst = 0.0;
  int samples = 0;
  for (const auto& p : all_presets()) {
    const auto& s = p.rep.structure();
    for (int i = 0; i < 1000; ++i, ++samples) {
      const Point x = make_point(p.rep, gaussian(rng, p.rep.dim_v()));
      const Direction b = random_direction(rng, s);
      // fourth-order central difference
      const double h = 1e-3;
      auto phi = [&](double t) { return kempf_ness(p.rep, x, GroupElement::exp_p(p.rep, b, t)); };
      const double fd = (8 * (phi(h) - phi(-h)) - (phi(2 * h) - phi(-2 * h))) / (12 * h);
      const Direction mu = gradient_map(p.rep, x);
      const double denom = s.norm(mu) * s.norm(b);
      worst = std::max(worst, std::abs(fd - s.inner(mu, b)) / denom);
    }
  }
  const double secs = seconds_since(t0);
  report(1, "gradient identity", worst <= 1e-6 && secs < 10.0,
         fmt("max rel err %.2e over %.0f samples, %.2f s", worst, samples, secs));
}

void cocycle() {
  std::mt19937_64 rng(1002);
  double worst_c = 0.0, worst_k = 0.0;
  for (const auto& p : all_presets()) {
    const auto& s = p.rep.structure();
    for (int i = 0; i < 200; ++i) {
      const Point x = make_point(p.rep, gaussian(rng, p.rep.dim_v()));
      auto random_g = [&] {
        GroupElement g = GroupElement::identity(p.rep.dim_v());
        for (int f = 0; f < 3; ++f)
          g = GroupElement::exp_p(p.rep, unit_direction(rng, s), 0.3) *
              GroupElement::exp_k(p.rep, gaussian(rng, s.dim_k())) * g;
        return g;
      };
      const GroupElement g = random_g(), h = random_g();
      const GroupElement k = GroupElement::exp_k(p.rep, gaussian(rng, s.dim_k()));
      worst_c = std::max(worst_c, std::abs(kempf_ness(p.rep, x, h * g) - kempf_ness(p.rep, x, g) -
                                           kempf_ness(p.rep, g.apply(p.rep, x), h)));
      worst_k = std::max(worst_k, std::abs(kempf_ness(p.rep, x, k * g) - kempf_ness(p.rep, x, g)));
    }
  }
  report(2, "cocycle and K-invariance", worst_c <= 1e-10 && worst_k <= 1e-10,
         fmt("cocycle %.2e, K-invariance %.2e", worst_c, worst_k));
}

void oracle_equivalence() {
  std::mt19937_64 rng(1003);
  double worst = 0.0;
  int flag_mismatch = 0, finite = 0, total = 0;
  for (const auto& p : all_presets()) {
    for (int i = 0; i < 1000; ++i, ++total) {
      const Direction b = random_direction(rng, p.rep.structure());
      const Point x = make_point(p.rep, biased_point(rng, p.rep, b));
      const auto num = max_weight_numeric(p.rep, x, b);
      const auto alg = max_weight_algebraic(p.rep, x, b);
      if (num.infinite != alg.infinite) {
        ++flag_mismatch;
      } else if (!alg.infinite) {
        ++finite;
        worst = std::max(worst, std::abs(num.value - alg.value));
      }
    }
  }
  report(3, "numeric vs algebraic weight", flag_mismatch == 0 && worst <= 1e-6,
         fmt("%.0f samples (%.0f finite), max diff %.2e", total, finite, worst) +
             ", flag mismatches " + std::to_string(flag_mismatch));
}

void golden_table() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto s = sl_preset(2);
  const auto ad = adjoint_representation(s, Space::Affine);
  auto pt = [&](const Matrix& m) { return make_point(ad, adjoint_coordinates(s, m)); };
  std::vector<std::string> bad;

  const auto h = classify(ad, pt(H2()));
  if (!(h.label == Label::Polystable && h.witness &&
        (h.witness->mat - Matrix::Identity(3, 3)).norm() <= 1e-12 && h.flow_final_moment_norm <= 1e-12))
    bad.push_back("H");
  const auto e = classify(ad, pt(E2()));
  if (!(e.label == Label::SemistableOnly && e.flow_termination == FlowTermination::Degenerated)) bad.push_back("E");
  const auto tr = kempf_ness_flow(ad, pt(E2()));
  if (!(tr.initial_stabilizer_dim == 1 && tr.final_stabilizer_dim == 3)) bad.push_back("E stabilizer jump");
  const auto r = classify(ad, pt(E2() - F2()));
  if (!(r.label == Label::Stable && (r.min_weight_infinite || r.min_weight > 0))) bad.push_back("E-F");
  if (classify(ad, make_point(ad, Vector::Zero(3))).label != Label::Polystable) bad.push_back("0");

  const auto def = defining_representation(s, Space::Affine);
  const auto e1 = classify(def, make_point(def, vec({1, 0})));
  bool e1_ok = e1.label == Label::SemistableOnly && e1.zero_directions.size() == 1;
  if (e1_ok) {
    // diag(−1,1)/√2 in the (H, E+F) coordinates
    const Vector want = vec({-1 / kR2, 0});
    const Vector got = e1.zero_directions[0].coords;
    const double ang = std::acos(std::min(1.0, got.dot(want) / (got.norm() * want.norm())));
    e1_ok = ang <= 1e-6;
  }
  if (!e1_ok) bad.push_back("(1,0)");

  const auto sym2 = sym_representation(s, 2, Space::Projective);
  const auto sq = classify(sym2, make_point(sym2, sym_coordinates(2, vec({1, 0, 0}))));
  if (!(sq.label == Label::Unstable && !sq.min_weight_infinite && std::abs(sq.min_weight + kR2) <= 1e-6))
    bad.push_back("v1^2");
  if (classify(sym2, make_point(sym2, sym_coordinates(2, vec({0, 1, 0})))).label != Label::Polystable)
    bad.push_back("v1v2");

  const double secs = seconds_since(t0);
  std::string detail = fmt("8 rows, %.2f s", secs);
  for (const auto& b : bad) detail += ", wrong: " + b;
  report(4, "golden classification", bad.empty() && secs < 60.0, detail);
}

void flow_recovery() {
  const auto s = sl_preset(2);
  const auto ad = adjoint_representation(s, Space::Affine);
  bool ok = true;
  std::string detail;
  for (double t : {0.1, 1.0, 5.0}) {
    const Matrix g = taylor_exp(t * E2());
    const Matrix x = g * H2() * g.inverse();
    const auto tr = kempf_ness_flow(ad, make_point(ad, adjoint_coordinates(s, x)));
    bool mono = true;
    for (size_t i = 1; i < tr.iterates.size(); ++i)
      if (tr.iterates[i].phi > tr.iterates[i - 1].phi) mono = false;
    const bool this_ok = tr.termination == FlowTermination::Converged && tr.final_moment_norm <= 1e-8 &&
                         tr.iterations <= 10000 && mono;
    ok = ok && this_ok;
    detail += fmt("t=%g: %.0f its, |mu|=%.1e; ", t, tr.iterations, tr.final_moment_norm);
  }
  report(5, "flow recovery", ok, detail);
}

void torus() {
  const auto s2 = sl_preset(2), s3 = sl_preset(3);
  const auto d2 = defining_representation(s2, Space::Affine);
  const auto d3 = defining_representation(s3, Space::Affine);
  Matrix m = Matrix::Zero(3, 3);
  m.diagonal() << 1, kR2, -1 - kR2;
  const Direction b = s3.p_coords(m);
  const int h = torus_dimension(d2, Direction(vec({1, 0}))).dim;
  const auto irr = torus_dimension(d3, b);
  const int zero = torus_dimension(d3, Direction(Vector::Zero(5))).dim;
  std::mt19937_64 rng(1006);
  int mismatches = 0;
  for (int i = 0; i < 100; ++i) {
    const Matrix k = random_rotation(rng, 3);
    const auto c = torus_dimension(d3, adjoint_action(s3, k, b));
    if (c.dim != irr.dim || c.indeterminate) ++mismatches;
    const Direction r = random_direction(rng, s3);
    if (torus_dimension(d3, adjoint_action(s3, k, r)).dim != torus_dimension(d3, r).dim) ++mismatches;
  }
  report(6, "torus dimensions", h == 1 && irr.dim == 2 && !irr.indeterminate && zero == 0 && mismatches == 0,
         fmt("H: %.0f, diag(1,r2,-1-r2): %.0f, zero: %.0f", h, irr.dim, zero) +
             ", conjugation mismatches " + std::to_string(mismatches) + "/200");
}

void parabolic() {
  std::mt19937_64 rng(1007);
  int bad = 0, total = 0;
  double worst_theta = 0.0;
  for (int n : {2, 3, 4}) {
    const auto s = sl_preset(n);
    for (int i = 0; i < 100; ++i, ++total) {
      // mix generic and degenerate (repeated-eigenvalue) elements
      Direction b = random_direction(rng, s);
      if (i % 4 == 3) {
        Vector a = gaussian(rng, n);
        a(n - 1) = a(0);
        a.array() -= a.mean();
        b = adjoint_action(s, random_rotation(rng, n), s.p_coords(Matrix(a.asDiagonal())));
      }
      const auto sp = parabolic_subalgebra(s, b);
      const auto gd = check_global_decomposition(s, b);
      if (sp.parabolic_plus.size() != sp.levi.size() + sp.nilradical_plus.size()) ++bad;
      if (!gd.holds || gd.dim_sum != s.dim_g()) ++bad;
      // θ(r^{β+}) against the independently computed r^{β−}: negative ad eigenspaces
      std::vector<Matrix> neg;
      for (const auto& e : ad_eigenspaces(s, b))
        if (e.eigenvalue < 0) neg.insert(neg.end(), e.basis.begin(), e.basis.end());
      if (neg.size() != sp.nilradical_plus.size()) {
        ++bad;
        continue;
      }
      if (neg.empty()) continue;
      Matrix q(n * n, static_cast<Eigen::Index>(neg.size()));
      for (size_t j = 0; j < neg.size(); ++j) q.col(static_cast<Eigen::Index>(j)) = flatten(neg[j]);
      q = column_space(q);
      for (const auto& r : sp.nilradical_plus)
        worst_theta = std::max(worst_theta, residual_from_span(q, flatten(cartan_involution(s, r))));
    }
  }
  report(7, "parabolic checks", bad == 0 && worst_theta <= 1e-8,
         fmt("%.0f elements, theta residual %.2e", total, worst_theta) + ", failures " + std::to_string(bad));
}

void monotone_and_bound() {
  std::mt19937_64 rng(1008);
  int violations = 0, finite = 0, curves = 0;
  double worst_drop = 0.0;
  for (const auto& p : all_presets()) {
    const auto& s = p.rep.structure();
    for (int i = 0; i < 50; ++i, ++curves) {
      const Direction b = random_direction(rng, s);
      const Point x = make_point(p.rep, biased_point(rng, p.rep, b));
      const WeightDecomposition wd = weight_decomposition(p.rep, b);
      // uniform and doubling grids
      double prev = -INFINITY;
      for (int k = 0; k <= 200; ++k) {
        const double v = weight_curve(p.rep, wd, x.vec, 0.05 * k);
        worst_drop = std::max(worst_drop, prev - v);
        if (v < prev) {
          ++violations;
          std::printf("  drop %s k=%d prev=%.17g v=%.17g\n", p.name.c_str(), k, prev, v);
        }
        prev = v;
      }
      prev = -INFINITY;
      for (double t = 1.0 / 64; t <= 4096; t *= 2) {
        const double v = weight_curve(p.rep, wd, x.vec, t);
        if (v < prev) ++violations;
        prev = v;
      }
      const auto num = max_weight_numeric(p.rep, x, b);
      for (size_t k = 1; k < num.samples.size(); ++k)
        if (num.samples[k] < num.samples[k - 1]) {
          ++violations;
          std::printf("  numdrop %s %.17g %.17g\n", p.name.c_str(), num.samples[k - 1], num.samples[k]);
        }
      const auto w = max_weight_algebraic(p.rep, x, b);
      if (!w.infinite) {
        ++finite;
        const double mu_b = s.inner(gradient_map(p.rep, x), b);
        if (w.value < mu_b - 1e-12 * (1 + std::abs(mu_b))) {
          ++violations;
          std::printf("  bound %s %.17g %.17g\n", p.name.c_str(), w.value, mu_b);
        }
      }
    }
  }
  report(8, "monotonicity and lower bound", violations == 0,
         fmt("%.0f curves, %.0f finite weights", curves, finite) + ", violations " + std::to_string(violations));
}

void slice_consistency() {
  std::mt19937_64 rng(1009);
  double worst = 0.0;
  int points = 0;
  auto run = [&](const Representation& rep, const Matrix& h) {
    const auto& s = rep.structure();
    const std::vector<Direction> a{s.p_coords(h)};
    const SliceProblem sl = restrict_to_slice(rep, a);
    for (int i = 0; i < 100; ++i, ++points) {
      const Vector y = gaussian(rng, static_cast<int>(sl.basis_v.cols()));
      const Direction full = gradient_map(rep, make_point(rep, sl.from_slice(y)));
      const Direction part = sl.embed(gradient_map(sl.rep, make_point(sl.rep, y)));
      worst = std::max(worst, (s.p_matrix(full) - s.p_matrix(part)).norm());
    }
  };
  Matrix h3 = Matrix::Zero(3, 3);
  h3.diagonal() << 1, 0, -1;
  for (Space sp : {Space::Affine, Space::Projective}) {
    run(adjoint_representation(sl_preset(2), sp), H2());
    run(adjoint_representation(sl_preset(3), sp), h3);
    run(defining_representation(sl_preset(3), sp), h3);
    run(sym_representation(sl_preset(2), 4, sp), H2());
  }
  report(9, "slice consistency", worst <= 1e-10, fmt("%.0f points, max residual %.2e", points, worst));
}

void determinism() {
  const auto dir = std::filesystem::temp_directory_path() / "realgit_acceptance";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "problem.json").string();
  std::ofstream(path) << R"({
    "group": "sl3", "representation": "adjoint", "seed": 2024,
    "points": [
      {"id": "regular", "matrix": [[1, 0, 0], [0, 0, 0], [0, 0, -1]]},
      {"id": "nilpotent", "matrix": [[0, 1, 0], [0, 0, 1], [0, 0, 0]]},
      {"id": "mixed", "matrix": [[1, 2, 0], [0, -2, 1], [3, 0, 1]]}
    ]})";
  std::ostringstream a, b, c, err;
  cli::Overrides o;
  const int ra = cli::cmd_classify(path, "", o, a, err);
  const int rb = cli::cmd_classify(path, "", o, b, err);
  o.jobs = 3;
  const int rc = cli::cmd_classify(path, "", o, c, err);
  const bool ok = ra == rb && rb == rc && !a.str().empty() && a.str() == b.str() && a.str() == c.str();
  report(10, "determinism", ok, fmt("%.0f bytes, exit codes %.0f/%.0f", static_cast<double>(a.str().size()), ra, rb));
}

}  // namespace

int main() {
  const std::vector<std::function<void()>> criteria{gradient_identity, cocycle,          oracle_equivalence,
                                                    golden_table,      flow_recovery,    torus,
                                                    parabolic,         monotone_and_bound, slice_consistency,
                                                    determinism};
  for (const auto& c : criteria) {
    try {
      c();
    } catch (const std::exception& e) {
      std::printf("criterion threw: %s\n", e.what());
      ++failures;
    }
  }
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
