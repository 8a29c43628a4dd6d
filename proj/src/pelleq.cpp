#include "pellbaker/pelleq.hpp"

#include <cstdint>
#include <stdexcept>

namespace pellbaker {

SqrtContinuedFraction sqrt_cf(const BigInt& d) {
  if (d < 2) throw std::invalid_argument("sqrt_cf: d must be at least 2");
  if (is_perfect_square(d)) throw PerfectSquare("sqrt_cf: " + to_decimal(d) + " is a square");
  SqrtContinuedFraction out;
  out.a0 = isqrt(d);
  BigInt m = 0, q = 1, a = out.a0;
  const BigInt stop = 2 * out.a0;
  do {
    m = q * a - m;
    q = (d - m * m) / q;
    a = (out.a0 + m) / q;
    out.period.push_back(a);
  } while (a != stop);
  return out;
}

FundamentalSolution fundamental_solution(const BigInt& d) {
  if (d < 2) throw std::invalid_argument("fundamental_solution: d must be at least 2");
  if (is_perfect_square(d)) throw PerfectSquare(to_decimal(d) + " is a square");
  if (!is_squarefree(d)) {
    throw std::invalid_argument("fundamental_solution: d must be squarefree");
  }
  SqrtContinuedFraction cf = sqrt_cf(d);
  const std::size_t L = cf.period.size();
  BigInt p_prev = 1, p = cf.a0, q_prev = 0, q = 1;
  for (std::size_t i = 0; i + 1 < L; ++i) {
    BigInt pn = cf.period[i] * p + p_prev;
    BigInt qn = cf.period[i] * q + q_prev;
    p_prev = std::move(p);
    q_prev = std::move(q);
    p = std::move(pn);
    q = std::move(qn);
  }
  FundamentalSolution fs;
  fs.d = d;
  fs.x1 = p;
  fs.y1 = q;
  fs.epsilon = (L % 2 == 0) ? 1 : -1;
  if (p * p - d * q * q != fs.epsilon) {
    throw std::logic_error("fundamental_solution: convergent does not solve the Pell equation");
  }
  fs.delta = QuadraticValue(BigRat(p), BigRat(q), d);
  fs.eta = fs.delta.conj();
  return fs;
}

XSequence::XSequence(const BigInt& x1, int epsilon) : x1_(x1), eps_(epsilon) {
  if (x1 < 1) throw std::invalid_argument("XSequence: x1 must be positive");
  if (epsilon != 1 && epsilon != -1) throw std::invalid_argument("XSequence: epsilon must be +-1");
  xs_ = {BigInt(1), x1};
}

XSequence::XSequence(const FundamentalSolution& fs) : XSequence(fs.x1, fs.epsilon) {
  has_y_ = true;
  d_ = fs.d;
  ys_ = {BigInt(0), fs.y1};
}

void XSequence::extend(std::size_t n) {
  while (xs_.size() <= n) {
    std::size_t k = xs_.size();
    xs_.push_back(2 * x1_ * xs_[k - 1] - eps_ * xs_[k - 2]);
    if (has_y_) ys_.push_back(2 * x1_ * ys_[k - 1] - eps_ * ys_[k - 2]);
  }
}

const BigInt& XSequence::x(std::size_t n) {
  extend(n);
  return xs_[n];
}

const BigInt& XSequence::y(std::size_t n) {
  if (!has_y_) throw std::logic_error("XSequence: no y-track without a fundamental solution");
  extend(n);
  return ys_[n];
}

std::vector<BigInt> x_terms(const BigInt& x1, int epsilon, const BigInt& limit) {
  if (x1 < 1) throw std::invalid_argument("x_terms: x1 must be positive");
  if (x1 == 1 && epsilon == 1) {
    throw std::invalid_argument("x_terms: x1 = 1 with epsilon = +1 is constant");
  }
  std::vector<BigInt> out;
  BigInt prev = 1, cur = x1, next;
  while (cur <= limit) {
    out.push_back(cur);
    next = 2 * x1 * cur - epsilon * prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return out;
}

BigInt x_term(const BigInt& x1, int epsilon, unsigned k) {
  if (k == 0) return BigInt(1);
  BigInt prev = 1, cur = x1, next;
  for (unsigned i = 1; i < k; ++i) {
    next = 2 * x1 * cur - epsilon * prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

namespace {

std::uint64_t x_term_mod64(std::uint64_t x1, int epsilon, unsigned k) {
  std::uint64_t prev = 1, cur = x1;
  for (unsigned i = 1; i < k; ++i) {
    std::uint64_t next = 2 * x1 * cur - (epsilon > 0 ? prev : -prev);
    prev = cur;
    cur = next;
  }
  return cur;
}

std::uint64_t low64(const BigInt& v) {
  static_assert(sizeof(unsigned long) == sizeof(std::uint64_t));
  BigInt low;
  mpz_fdiv_r_2exp(low.get_mpz_t(), v.get_mpz_t(), 64);
  return mpz_get_ui(low.get_mpz_t());
}

// Sign of x_k(c) - v, stopping as soon as the (increasing) sequence passes v.
int compare_x_term(const BigInt& c, unsigned k, int epsilon, const BigInt& v) {
  BigInt prev = 1, cur = c, next;
  for (unsigned i = 1; i < k; ++i) {
    if (cur > v) return 1;
    next = 2 * c * cur - epsilon * prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cmp(cur, v);
}

}  // namespace

std::optional<BigInt> invert_x(const BigInt& v, unsigned k, int epsilon) {
  if (k < 1) throw std::invalid_argument("invert_x: k must be at least 1");
  if (epsilon != 1 && epsilon != -1) throw std::invalid_argument("invert_x: epsilon must be +-1");
  if (v < 1) return std::nullopt;
  if (k == 1) return v;
  if (epsilon == 1 && v == 1) return BigInt(1);

  // With delta = x1 + sqrt(x1^2 - eps) and |eta| <= 1, 2 x_k - 1 <= delta^k <= 2 x_k + 1
  // and (delta - 1)/2 < x1 < (delta + 1)/2.
  BigInt s, r;
  BigInt lo_arg = 2 * v - 1, hi_arg = 2 * v + 1;
  mpz_root(s.get_mpz_t(), lo_arg.get_mpz_t(), k);
  mpz_root(r.get_mpz_t(), hi_arg.get_mpz_t(), k);
  BigInt lo = (s - 1) / 2;
  if (lo < 1) lo = 1;
  BigInt hi = (r + 2) / 2;
  if (hi > v) hi = v;
  if (hi < lo) return std::nullopt;

  if (hi - lo <= 8) {
    const std::uint64_t target = low64(v);
    for (BigInt c = lo; c <= hi; ++c) {
      if (x_term_mod64(low64(c), epsilon, k) != target) continue;
      if (compare_x_term(c, k, epsilon, v) == 0) return c;
    }
    return std::nullopt;
  }
  // x1 -> x_k is strictly increasing, so bisect.
  while (lo <= hi) {
    BigInt mid = (lo + hi) / 2;
    int c = compare_x_term(mid, k, epsilon, v);
    if (c == 0) return mid;
    if (c < 0) {
      lo = mid + 1;
    } else {
      hi = mid - 1;
    }
  }
  return std::nullopt;
}

}  // namespace pellbaker
