#include <gmpxx.h>

#include <limits>
#include <vector>

#include "realgit/error.hpp"
#include "realgit/maxweight.hpp"

namespace realgit {

namespace {

using IntVec = std::vector<mpz_class>;

mpz_class round_nearest(const mpq_class& q) {
  // floor(q + 1/2)
  mpq_class h = q + mpq_class(1, 2);
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), h.get_num_mpz_t(), h.get_den_mpz_t());
  return r;
}

}  // namespace

std::vector<std::vector<long long>> lll_reduce(const std::vector<std::vector<long long>>& basis,
                                               double delta) {
  const size_t n = basis.size();
  if (n == 0) return {};
  const size_t dim = basis[0].size();
  std::vector<IntVec> b(n, IntVec(dim));
  for (size_t i = 0; i < n; ++i) {
    if (basis[i].size() != dim) throw DimensionError("lattice basis rows have different lengths");
    for (size_t j = 0; j < dim; ++j) b[i][j] = static_cast<long>(basis[i][j]);
  }

  // Gram–Schmidt data: mu[i][j] and squared norms B[i] of b*_i, exact.
  std::vector<std::vector<mpq_class>> mu(n, std::vector<mpq_class>(n, 0));
  std::vector<mpq_class> bn(n);
  std::vector<std::vector<mpq_class>> bstar(n, std::vector<mpq_class>(dim));
  for (size_t i = 0; i < n; ++i) {
    for (size_t d = 0; d < dim; ++d) bstar[i][d] = b[i][d];
    for (size_t j = 0; j < i; ++j) {
      if (bn[j] == 0) continue;
      mpq_class num = 0;
      for (size_t d = 0; d < dim; ++d) num += mpq_class(b[i][d]) * bstar[j][d];
      mu[i][j] = num / bn[j];
      for (size_t d = 0; d < dim; ++d) bstar[i][d] -= mu[i][j] * bstar[j][d];
    }
    bn[i] = 0;
    for (size_t d = 0; d < dim; ++d) bn[i] += bstar[i][d] * bstar[i][d];
    if (bn[i] == 0) throw InputError("lattice basis is linearly dependent");
  }

  mpq_class dq(static_cast<long>(delta * 1000 + 0.5), 1000);
  auto size_reduce = [&](size_t k, size_t j) {
    if (abs(mu[k][j]) <= mpq_class(1, 2)) return;
    const mpz_class q = round_nearest(mu[k][j]);
    for (size_t d = 0; d < dim; ++d) b[k][d] -= q * b[j][d];
    for (size_t i = 0; i < j; ++i) mu[k][i] -= q * mu[j][i];
    mu[k][j] -= q;
  };

  size_t k = 1;
  while (k < n) {
    size_reduce(k, k - 1);
    if (bn[k] >= (dq - mu[k][k - 1] * mu[k][k - 1]) * bn[k - 1]) {
      for (size_t j = k - 1; j-- > 0;) size_reduce(k, j);
      ++k;
      continue;
    }
    // Swap b_k and b_{k-1} and update the Gram–Schmidt data in place.
    std::swap(b[k], b[k - 1]);
    const mpq_class m = mu[k][k - 1];
    const mpq_class bb = bn[k] + m * m * bn[k - 1];
    mu[k][k - 1] = m * bn[k - 1] / bb;
    bn[k] = bn[k - 1] * bn[k] / bb;
    bn[k - 1] = bb;
    for (size_t j = 0; j + 1 < k; ++j) std::swap(mu[k - 1][j], mu[k][j]);
    for (size_t i = k + 1; i < n; ++i) {
      const mpq_class t = mu[i][k];
      mu[i][k] = mu[i][k - 1] - m * t;
      mu[i][k - 1] = t + mu[k][k - 1] * mu[i][k];
    }
    if (k > 1) --k;
  }

  std::vector<std::vector<long long>> out(n, std::vector<long long>(dim));
  for (size_t i = 0; i < n; ++i)
    for (size_t d = 0; d < dim; ++d) {
      if (!b[i][d].fits_slong_p()) throw Error("reduced lattice entry does not fit in 64 bits");
      out[i][d] = b[i][d].get_si();
    }
  return out;
}

}  // namespace realgit
