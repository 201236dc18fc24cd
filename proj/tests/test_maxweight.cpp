#include <doctest.h>

#include <algorithm>

#include "helpers.hpp"

using namespace realgit;
using namespace rt;

namespace {

const double kR2 = std::sqrt(2.0);

std::vector<Representation> presets(Space space) {
  std::vector<Representation> reps;
  for (int n : {2, 3, 4}) {
    reps.push_back(defining_representation(sl_preset(n), space));
    reps.push_back(adjoint_representation(sl_preset(n), space));
  }
  reps.push_back(sym_representation(sl_preset(2), 3, space));
  return reps;
}

// Random x that often has a finite weight along β: keep only eigencomponents
// of dρ(β) below a random cutoff.
Vector biased_point(std::mt19937_64& rng, const Representation& rep, const Direction& beta) {
  Vector x = gaussian(rng, rep.dim_v());
  if (rng() % 2 == 0) return x;
  Eigen::SelfAdjointEigenSolver<Matrix> es(rep.rho(beta));
  const int keep = 1 + static_cast<int>(rng() % static_cast<unsigned>(rep.dim_v()));
  const Matrix q = es.eigenvectors().leftCols(keep);
  return q * (q.transpose() * x);
}

}  // namespace

TEST_CASE("weight curve examples") {
  const auto s = sl_preset(2);
  const auto rep = defining_representation(s, Space::Affine);
  const Point x = make_point(rep, vec({1, 0}));
  const Direction mh(vec({-1, 0}));
  CHECK(weight_curve(rep, x, mh, 0.0) == doctest::Approx(-0.5));
  CHECK(weight_curve(rep, x, mh, 10.0) == doctest::Approx(-0.5 * std::exp(-20.0)).epsilon(1e-10));
  const Point o = make_point(rep, vec({0, 0}));
  for (double t : {0.0, 1.0, 100.0}) CHECK(weight_curve(rep, o, mh, t) == 0.0);
}

TEST_CASE("numeric maximal weight examples") {
  const auto s = sl_preset(2);
  const auto rep = defining_representation(s, Space::Affine);
  const Point x = make_point(rep, vec({1, 0}));
  const auto up = max_weight_numeric(rep, x, Direction(vec({1, 0})));
  CHECK(up.infinite);
  CHECK(up.method == WeightMethod::Numeric);
  const auto down = max_weight_numeric(rep, x, Direction(vec({-1, 0})));
  CHECK_FALSE(down.infinite);
  CHECK(down.value == doctest::Approx(0.0));
  CHECK_FALSE(down.t_grid.empty());
  CHECK(down.t_grid.size() == down.samples.size());
  const auto zero = max_weight_numeric(rep, make_point(rep, vec({0, 0})), Direction(vec({0.3, 0.4})));
  CHECK_FALSE(zero.infinite);
  CHECK(zero.value == 0.0);
}

TEST_CASE("algebraic maximal weight examples") {
  const auto s = sl_preset(2);
  const auto aff = defining_representation(s, Space::Affine);
  CHECK(max_weight_algebraic(aff, make_point(aff, vec({1, 0})), Direction(vec({1, 0}))).infinite);

  const auto sym2 = sym_representation(s, 2, Space::Projective);
  const Direction hn(vec({1 / kR2, 0}));
  const Direction mhn(vec({-1 / kR2, 0}));
  const auto sq = max_weight_algebraic(sym2, make_point(sym2, sym_coordinates(2, vec({1, 0, 0}))), hn);
  CHECK_FALSE(sq.infinite);
  CHECK(sq.value == doctest::Approx(-kR2).epsilon(1e-12));
  const Point mixed = make_point(sym2, sym_coordinates(2, vec({0, 1, 0})));
  CHECK(max_weight_algebraic(sym2, mixed, hn).value == doctest::Approx(0.0));
  CHECK(max_weight_algebraic(sym2, mixed, mhn).value == doctest::Approx(0.0));
}

TEST_CASE("boundary weight uses the one-parameter-subgroup sign") {
  const auto rep = defining_representation(sl_preset(2), Space::Affine);
  const Point x = make_point(rep, vec({1, 0}));
  CHECK(boundary_weight(rep, x, Direction(vec({1 / kR2, 0}))).infinite);
  const auto neg = boundary_weight(rep, x, Direction(vec({-1 / kR2, 0})));
  CHECK_FALSE(neg.infinite);
  CHECK(neg.value == doctest::Approx(0.0));
  CHECK(neg.warnings.empty());
  const Point o = make_point(rep, vec({0, 0}));
  std::mt19937_64 rng(3);
  for (int i = 0; i < 5; ++i) {
    const auto w = boundary_weight(rep, o, unit_direction(rng, rep.structure()));
    CHECK_FALSE(w.infinite);
    CHECK(w.value == 0.0);
  }
  const auto scaled = boundary_weight(rep, x, Direction(vec({-1, 0})));
  CHECK_FALSE(scaled.warnings.empty());
}

TEST_CASE("numeric and algebraic weights agree with a direct eigen-solver oracle") {
  std::mt19937_64 rng(101);
  for (Space sp : {Space::Affine, Space::Projective})
    for (const auto& rep : presets(sp)) {
      for (int trial = 0; trial < 40; ++trial) {
        const Direction b = random_direction(rng, rep.structure());
        const Point x = make_point(rep, biased_point(rng, rep, b));
        const auto num = max_weight_numeric(rep, x, b);
        const auto alg = max_weight_algebraic(rep, x, b);
        const RefWeight ref = reference_weight(rep.rho(b), x.vec, rep.projective());
        CHECK(num.infinite == ref.infinite);
        CHECK(alg.infinite == ref.infinite);
        if (!ref.infinite) {
          CHECK(std::abs(num.value - ref.value) <= 1e-6);
          CHECK(std::abs(alg.value - ref.value) <= 1e-9 * (1 + std::abs(ref.value)));
        }
      }
    }
}

TEST_CASE("weight curve is nondecreasing and bounded by the maximal weight") {
  std::mt19937_64 rng(103);
  for (Space sp : {Space::Affine, Space::Projective})
    for (const auto& rep : presets(sp)) {
      const auto& s = rep.structure();
      for (int trial = 0; trial < 20; ++trial) {
        const Direction b = random_direction(rng, s);
        const Point x = make_point(rep, biased_point(rng, rep, b));
        double prev = -INFINITY;
        for (double t = 0.0; t <= 20.0; t += 0.5) {
          const double v = weight_curve(rep, x, b, t);
          CHECK(v >= prev - 1e-12 * (1 + std::abs(v)));
          prev = v;
        }
        const auto w = max_weight_algebraic(rep, x, b);
        const double mu_b = s.inner(gradient_map(rep, x), b);
        CHECK(weight_curve(rep, x, b, 0.0) == doctest::Approx(mu_b).epsilon(1e-10));
        if (!w.infinite) CHECK(w.value >= mu_b - 1e-9 * (1 + std::abs(mu_b)));
      }
    }
}

TEST_CASE("weight gain equals the integrated squared field speed") {
  // λ(x,β,T) − λ(x,β,0) = ∫₀ᵀ ‖β_X(exp(tβ)x)‖² dt, composite Simpson rule.
  std::mt19937_64 rng(107);
  for (Space sp : {Space::Affine, Space::Projective})
    for (const auto& rep : presets(sp)) {
      const Direction b = unit_direction(rng, rep.structure());
      const Point x = make_point(rep, gaussian(rng, rep.dim_v()));
      const double T = 1.5;
      const int n = 600;
      const double h = T / n;
      double integral = 0.0;
      for (int i = 0; i <= n; ++i) {
        const double t = i * h;
        const double f = field_speed_squared(rep, b, GroupElement::exp_p(rep, b, t).apply(rep, x));
        integral += f * (i == 0 || i == n ? 1.0 : (i % 2 ? 4.0 : 2.0));
      }
      integral *= h / 3.0;
      const double gain = weight_curve(rep, x, b, T) - weight_curve(rep, x, b, 0.0);
      CHECK(std::abs(gain - integral) <= 1e-7 * (1 + std::abs(gain)));
    }
}

TEST_CASE("boundary weight is K-equivariant") {
  std::mt19937_64 rng(109);
  for (Space sp : {Space::Affine, Space::Projective})
    for (int n : {2, 3, 4}) {
      const auto s = sl_preset(n);
      const auto rep = defining_representation(s, sp);
      for (int trial = 0; trial < 20; ++trial) {
        const Matrix k = random_rotation(rng, n);
        const Direction b = unit_direction(rng, s);
        const Point x = make_point(rep, biased_point(rng, rep, adjoint_action(s, k, b)));
        const Point kinv_x = GroupElement{k.transpose()}.apply(rep, x);
        const auto lhs = boundary_weight(rep, kinv_x, b);
        const auto rhs = boundary_weight(rep, x, adjoint_action(s, k, b));
        CHECK(lhs.infinite == rhs.infinite);
        if (!lhs.infinite) CHECK(lhs.value == doctest::Approx(rhs.value).epsilon(1e-6));
      }
    }
}

TEST_CASE("additivity on commuting directions fixing x") {
  std::mt19937_64 rng(113);
  for (int n : {3, 4}) {
    const auto s = sl_preset(n);
    const auto rep = defining_representation(s, Space::Projective);
    for (int trial = 0; trial < 10; ++trial) {
      const Matrix k = random_rotation(rng, n);
      Vector a = gaussian(rng, n), c = gaussian(rng, n);
      a.array() -= a.mean();
      c.array() -= c.mean();
      const Direction b1 = s.p_coords(k * a.asDiagonal() * k.transpose());
      const Direction b2 = s.p_coords(k * c.asDiagonal() * k.transpose());
      const Point x = make_point(rep, k.col(0));  // eigenvector of both, so b1 ∈ g_x
      const Direction sum(b1.coords + b2.coords);
      const double l1 = max_weight_algebraic(rep, x, b1).value;
      const double l2 = max_weight_algebraic(rep, x, b2).value;
      CHECK(max_weight_algebraic(rep, x, sum).value == doctest::Approx(l1 + l2).epsilon(1e-9));
      CHECK(l1 == doctest::Approx(a(0)).epsilon(1e-9));
    }
  }
}

TEST_CASE("boundary weight rescales non-unit directions") {
  std::mt19937_64 rng(127);
  const auto rep = sym_representation(sl_preset(2), 3, Space::Projective);
  for (int trial = 0; trial < 20; ++trial) {
    const Direction b = random_direction(rng, rep.structure());
    const double nb = rep.structure().norm(b);
    const Point x = make_point(rep, gaussian(rng, 4));
    const auto unit = boundary_weight(rep, x, rep.structure().normalized(b));
    const auto raw = max_weight_algebraic(rep, x, b);
    CHECK(unit.value == doctest::Approx(raw.value / nb).epsilon(1e-9));
    const auto rescaled = boundary_weight(rep, x, b);
    CHECK(rescaled.value == doctest::Approx(unit.value).epsilon(1e-12));
  }
}

TEST_CASE("zero set of a vector in the defining representation") {
  const auto rep = defining_representation(sl_preset(2), Space::Affine);
  const auto z = zero_set_search(rep, make_point(rep, vec({1, 0})));
  CHECK_FALSE(z.min_infinite);
  CHECK(std::abs(z.min_value) <= 1e-9);
  REQUIRE(z.zeros.size() == 1);
  const Vector expect = vec({-1 / kR2, 0});
  const Vector u = z.zeros[0].beta.coords;
  const double cosang = u.dot(expect) / (u.norm() * expect.norm());
  CHECK(std::acos(std::min(1.0, cosang)) <= 1e-6);
}

TEST_CASE("zero set of a rotation generator is empty") {
  const auto s = sl_preset(2);
  const auto rep = adjoint_representation(s, Space::Affine);
  const auto z = zero_set_search(rep, make_point(rep, adjoint_coordinates(s, E2() - F2())));
  CHECK(z.zeros.empty());
  CHECK((z.min_infinite || z.min_value > 1e-6));
}

TEST_CASE("zero set of the origin is every sample") {
  const auto rep = adjoint_representation(sl_preset(2), Space::Affine);
  const auto z = zero_set_search(rep, make_point(rep, Vector::Zero(3)));
  CHECK(z.min_value == 0.0);
  CHECK(static_cast<int>(z.zeros.size()) == z.candidates);
  CHECK(z.zeros.size() > 10);
}

TEST_CASE("zero search is deterministic and finds the minimum of unstable forms") {
  const auto rep = sym_representation(sl_preset(2), 2, Space::Projective);
  const Point x = make_point(rep, sym_coordinates(2, vec({1, 0, 0})));
  ZeroSearchOptions o;
  o.seed = 99;
  const auto a = zero_set_search(rep, x, o);
  const auto b = zero_set_search(rep, x, o);
  CHECK(a.min_value == b.min_value);
  CHECK((a.argmin.coords - b.argmin.coords).norm() == 0.0);
  CHECK(a.min_value == doctest::Approx(-kR2).epsilon(1e-6));
  CHECK(a.zeros.empty());
}

TEST_CASE("torus dimension examples") {
  const auto s2 = sl_preset(2);
  const auto d2 = defining_representation(s2, Space::Affine);
  CHECK(torus_dimension(d2, Direction(vec({0, 0}))).dim == 0);
  const auto h = torus_dimension(d2, Direction(vec({1, 0})));
  CHECK(h.dim == 1);
  CHECK(h.exact_rational);

  const auto s3 = sl_preset(3);
  const auto d3 = defining_representation(s3, Space::Affine);
  Matrix m = Matrix::Zero(3, 3);
  m.diagonal() << 1, kR2, -1 - kR2;
  const Direction b = s3.p_coords(m);
  const auto t = torus_dimension(d3, b);
  CHECK(t.dim == 2);
  CHECK_FALSE(t.indeterminate);
  REQUIRE(t.relations.size() == 1);
  // the relation must annihilate the frequencies
  double resid = 0.0;
  for (size_t i = 0; i < t.frequencies.size(); ++i) resid += t.relations[0][i] * t.frequencies[i];
  CHECK(std::abs(resid) <= 1e-8);

  // adjoint frequencies are differences of the same numbers: still rank 2
  CHECK(torus_dimension(adjoint_representation(s3, Space::Affine), b).dim == 2);

  std::mt19937_64 rng(131);
  for (int trial = 0; trial < 20; ++trial) {
    const Direction kb = adjoint_action(s3, random_rotation(rng, 3), b);
    CHECK(torus_dimension(d3, kb).dim == 2);
  }
}

TEST_CASE("rational rank") {
  CHECK(rational_rank({1.0, 0.5, 2.0, -1.5}).dim == 1);
  CHECK(rational_rank({1.0, std::sqrt(2.0), std::sqrt(3.0)}).dim == 3);
  CHECK(rational_rank({std::sqrt(2.0), std::sqrt(8.0), 1.0}).dim == 2);
  CHECK(rational_rank({M_PI, 2 * M_PI + 1, 1.0}).dim == 2);
  CHECK(rational_rank({}).dim == 0);
}

TEST_CASE("LLL reduction preserves the lattice and shortens the basis") {
  const std::vector<std::vector<long long>> basis{{1, 1, 1}, {-1, 0, 2}, {3, 5, 6}};
  const auto red = lll_reduce(basis);
  REQUIRE(red.size() == 3);
  auto to_mat = [](const std::vector<std::vector<long long>>& b) {
    Matrix m(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m(i, j) = static_cast<double>(b[i][j]);
    return m;
  };
  const Matrix a = to_mat(basis), r = to_mat(red);
  CHECK(std::abs(std::abs(a.determinant()) - std::abs(r.determinant())) <= 1e-9);
  // every reduced vector is an integer combination of the original rows
  const Matrix coeff = r * a.inverse();
  CHECK((coeff - coeff.array().round().matrix()).norm() <= 1e-9);
  CHECK(r.row(0).squaredNorm() <= 2.0);
  for (int i = 0; i < 3; ++i) CHECK(r.row(i).squaredNorm() <= a.row(2).squaredNorm());
}
