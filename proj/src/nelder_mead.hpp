#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <vector>

#include "realgit/linalg.hpp"

namespace realgit::detail {

struct NelderMeadResult {
  Vector x;
  double value = 0.0;
  int evaluations = 0;
};

// Plain Nelder–Mead with the standard coefficients (1, 2, 0.5, 0.5).
inline NelderMeadResult nelder_mead(const std::function<double(const Vector&)>& f, const Vector& x0,
                                    double step, int max_evals, double x_tol = 1e-12) {
  const auto n = x0.size();
  std::vector<Vector> pts(n + 1, x0);
  std::vector<double> vals(n + 1);
  int evals = 0;
  auto eval = [&](const Vector& x) {
    ++evals;
    return f(x);
  };
  for (Eigen::Index i = 0; i < n; ++i) pts[i + 1](i) += step;
  for (Eigen::Index i = 0; i <= n; ++i) vals[i] = eval(pts[i]);

  std::vector<size_t> order(n + 1);
  while (evals < max_evals) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return vals[a] < vals[b]; });
    const size_t best = order.front(), worst = order.back(), second = order[n - 1];

    double size = 0.0;
    for (const auto& p : pts) size = std::max(size, (p - pts[best]).cwiseAbs().maxCoeff());
    if (size <= x_tol) break;

    Vector centroid = Vector::Zero(n);
    for (size_t i : order)
      if (i != worst) centroid += pts[i];
    centroid /= static_cast<double>(n);

    const Vector xr = centroid + (centroid - pts[worst]);
    const double fr = eval(xr);
    if (fr < vals[best]) {
      const Vector xe = centroid + 2.0 * (centroid - pts[worst]);
      const double fe = eval(xe);
      if (fe < fr) {
        pts[worst] = xe;
        vals[worst] = fe;
      } else {
        pts[worst] = xr;
        vals[worst] = fr;
      }
      continue;
    }
    if (fr < vals[second]) {
      pts[worst] = xr;
      vals[worst] = fr;
      continue;
    }
    const bool outside = fr < vals[worst];
    const Vector xc = outside ? Vector(centroid + 0.5 * (xr - centroid))
                              : Vector(centroid + 0.5 * (pts[worst] - centroid));
    const double fc = eval(xc);
    if (fc < (outside ? fr : vals[worst])) {
      pts[worst] = xc;
      vals[worst] = fc;
      continue;
    }
    for (size_t i = 0; i < pts.size(); ++i) {
      if (i == best) continue;
      pts[i] = pts[best] + 0.5 * (pts[i] - pts[best]);
      vals[i] = eval(pts[i]);
    }
  }
  const size_t b = static_cast<size_t>(std::min_element(vals.begin(), vals.end()) - vals.begin());
  return {pts[b], vals[b], evals};
}

}  // namespace realgit::detail
