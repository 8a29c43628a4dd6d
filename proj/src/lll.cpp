#include <stdexcept>

#include "pellbaker/reduce.hpp"

namespace pellbaker {
namespace {

BigInt dot(const std::vector<BigInt>& a, const std::vector<BigInt>& b) {
  BigInt s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Nearest integer to a/b (b > 0), ties upwards.
BigInt round_div(const BigInt& a, const BigInt& b) { return floor_div(2 * a + b, 2 * b); }

void axpy(std::vector<BigInt>& y, const BigInt& q, const std::vector<BigInt>& x) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] -= q * x[i];
}

}  // namespace

// Integral LLL with 1-based indices as in the usual presentation; d[0] = 1.
LLLReduction lll_reduce_basis(const IntMatrix& input, const BigRat& lovasz) {
  if (!(lovasz > BigRat(1, 4) && lovasz < 1)) {
    throw std::invalid_argument("lll_reduce_basis: lovasz must lie in (1/4, 1)");
  }
  const std::size_t n = input.size();
  if (n == 0) return {};
  for (const auto& row : input) {
    if (row.size() != input[0].size()) throw std::invalid_argument("lll_reduce_basis: ragged basis");
  }
  const BigInt a = lovasz.get_num(), b = lovasz.get_den();

  std::vector<std::vector<BigInt>> bv(n + 1), H(n + 1);
  for (std::size_t i = 1; i <= n; ++i) {
    bv[i] = input[i - 1];
    H[i].assign(n, BigInt(0));
    H[i][i - 1] = 1;
  }
  std::vector<BigInt> d(n + 1, BigInt(0));
  std::vector<std::vector<BigInt>> lam(n + 1, std::vector<BigInt>(n + 1, BigInt(0)));
  d[0] = 1;
  d[1] = dot(bv[1], bv[1]);
  if (d[1] == 0) throw SingularBasis("lll_reduce_basis: zero vector");
  std::size_t k = 2, kmax = 1;

  auto red = [&](std::size_t k, std::size_t l) {
    if (2 * abs(lam[k][l]) > d[l]) {
      BigInt q = round_div(lam[k][l], d[l]);
      axpy(bv[k], q, bv[l]);
      axpy(H[k], q, H[l]);
      lam[k][l] -= q * d[l];
      for (std::size_t i = 1; i < l; ++i) lam[k][i] -= q * lam[l][i];
    }
  };
  auto swap = [&](std::size_t k) {
    std::swap(bv[k], bv[k - 1]);
    std::swap(H[k], H[k - 1]);
    for (std::size_t j = 1; j + 1 < k; ++j) std::swap(lam[k][j], lam[k - 1][j]);
    BigInt l = lam[k][k - 1];
    BigInt B = (d[k - 2] * d[k] + l * l) / d[k - 1];
    for (std::size_t i = k + 1; i <= kmax; ++i) {
      BigInt t = lam[i][k];
      lam[i][k] = (d[k] * lam[i][k - 1] - l * t) / d[k - 1];
      lam[i][k - 1] = (B * t + l * lam[i][k]) / d[k];
    }
    d[k - 1] = B;
  };

  while (k <= n) {
    if (k > kmax) {
      kmax = k;
      for (std::size_t j = 1; j <= k; ++j) {
        BigInt u = dot(bv[k], bv[j]);
        for (std::size_t i = 1; i < j; ++i) u = (d[i] * u - lam[k][i] * lam[j][i]) / d[i - 1];
        if (j < k) {
          lam[k][j] = u;
        } else {
          d[k] = u;
          if (u == 0) throw SingularBasis("lll_reduce_basis: vectors are linearly dependent");
        }
      }
    }
    red(k, k - 1);
    if (b * d[k] * d[k - 2] < a * d[k - 1] * d[k - 1] - b * lam[k][k - 1] * lam[k][k - 1]) {
      swap(k);
      if (k > 2) --k;
      continue;
    }
    for (std::size_t l = k - 1; l-- > 1;) red(k, l);
    ++k;
  }

  LLLReduction out;
  for (std::size_t i = 1; i <= n; ++i) {
    out.basis.push_back(std::move(bv[i]));
    out.transform.push_back(std::move(H[i]));
  }
  out.d = std::move(d);
  return out;
}

BigInt default_lll_C(const std::vector<BigInt>& X) {
  if (X.empty()) throw std::invalid_argument("default_lll_C: empty X");
  BigInt m = 0;
  for (const auto& x : X) m = x > m ? x : m;
  BigInt base = BigInt(static_cast<unsigned long>(X.size())) * m, out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), X.size() + 1);
  return out;
}

LLLBound lll_form_lower_bound(const LLLInstance& inst, const BigRat& lovasz) {
  const std::size_t t = inst.tau.size();
  if (t < 1 || inst.X.size() != t) throw std::invalid_argument("lll: need one X_i per tau_i");
  BigInt xmax = 0;
  for (const auto& x : inst.X) {
    if (x < 1) throw std::invalid_argument("lll: X_i must be positive");
    xmax = x > xmax ? x : xmax;
  }
  BigInt need;
  BigInt txm = BigInt(static_cast<unsigned long>(t)) * xmax;
  mpz_pow_ui(need.get_mpz_t(), txm.get_mpz_t(), t);
  if (!(inst.C > need)) throw std::invalid_argument("lll: C must exceed (t max X_i)^t");

  // Rows b_j = e_j + round(C tau_j) e_t for j < t, b_t = round(C tau_t) e_t.
  const long start = static_cast<long>(mpz_sizeinbase(inst.C.get_mpz_t(), 2)) + 64;
  std::vector<BigInt> scaled(t);
  for (std::size_t j = 0; j < t; ++j) {
    scaled[j] = escalate(start, [&](long prec) -> std::optional<BigInt> {
      return (RealBall(inst.C, prec) * inst.tau[j](prec)).round_nearest();
    });
  }
  IntMatrix basis(t, std::vector<BigInt>(t, BigInt(0)));
  for (std::size_t j = 0; j < t; ++j) {
    if (j + 1 < t) basis[j][j] = 1;
    basis[j][t - 1] = scaled[j];
  }
  LLLReduction red = lll_reduce_basis(basis, lovasz);

  LLLBound out;
  out.C = inst.C;
  for (std::size_t i = 1; i <= t; ++i) {
    BigRat Bi = make_rat(red.d[i], red.d[i - 1]);
    if (i == 1 || Bi < out.theta2) out.theta2 = Bi;
  }
  out.Q = 0;
  BigInt xs = 0;
  for (std::size_t i = 0; i + 1 < t; ++i) {
    out.Q += BigRat(inst.X[i] * inst.X[i]);
    xs += inst.X[i];
  }
  out.R = make_rat(1 + xs, 2);
  if (out.theta2 < out.Q + out.R * out.R) {
    throw ConditionFailed("lll: theta^2 < Q + R^2; retry with a larger C");
  }
  // Lower bound for sqrt(theta^2 - Q) with 64 fractional bits.
  BigRat diff = out.theta2 - out.Q;
  BigInt scaled_diff = floor_of(diff * BigRat(BigInt(1) << 128));
  BigRat root = make_rat(isqrt(scaled_diff), BigInt(1) << 64);
  out.bound = (root - out.R) / BigRat(inst.C);
  out.bound.canonicalize();
  if (out.bound <= 0) throw ConditionFailed("lll: lower bound is not positive");
  return out;
}

}  // namespace pellbaker
