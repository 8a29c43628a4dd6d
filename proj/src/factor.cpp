#include "pellbaker/factor.hpp"

#include <algorithm>
#include <map>

namespace pellbaker {
namespace {

constexpr unsigned kTrialLimit = 10000;

const std::vector<unsigned>& small_primes() {
  static const std::vector<unsigned> primes = [] {
    std::vector<bool> composite(kTrialLimit + 1, false);
    std::vector<unsigned> out;
    for (unsigned i = 2; i <= kTrialLimit; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (unsigned j = i * i; j <= kTrialLimit; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

// Brent's variant of Pollard rho. Returns a nontrivial factor of the odd
// composite n, consuming iterations from `budget`.
BigInt rho_split(const BigInt& n, std::uint64_t& budget) {
  const unsigned long batch = 128;
  for (unsigned long c = 1;; ++c) {
    BigInt y = 2, x, ys, q = 1, g = 1, diff;
    unsigned long r = 1;
    auto step = [&](BigInt& v) {
      v = v * v + c;
      mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
    };
    while (g == 1) {
      x = y;
      for (unsigned long i = 0; i < r; ++i) step(y);
      unsigned long k = 0;
      while (k < r && g == 1) {
        ys = y;
        unsigned long lim = std::min(batch, r - k);
        for (unsigned long i = 0; i < lim; ++i) {
          step(y);
          diff = x - y;
          q = q * abs(diff);
          mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        }
        if (budget < lim) throw FactorizationBudgetExceeded("factorisation effort exhausted");
        budget -= lim;
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += lim;
      }
      r *= 2;
    }
    if (g == n) {
      do {
        step(ys);
        diff = x - ys;
        diff = abs(diff);
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        if (budget == 0) throw FactorizationBudgetExceeded("factorisation effort exhausted");
        --budget;
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

}  // namespace

std::vector<std::pair<BigInt, unsigned>> factorize(const BigInt& n, std::uint64_t effort) {
  if (n < 1) throw std::invalid_argument("factorize: n must be positive");
  std::map<BigInt, unsigned> found;
  BigInt m = n;
  for (unsigned p : small_primes()) {
    if (BigInt(p) * p > m) break;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      m /= p;
      ++found[BigInt(p)];
    }
  }
  std::vector<std::pair<BigInt, unsigned>> pending;
  if (m > 1) pending.emplace_back(m, 1);
  std::uint64_t budget = effort;
  while (!pending.empty()) {
    auto [c, mult] = pending.back();
    pending.pop_back();
    if (c == 1) continue;
    if (mpz_probab_prime_p(c.get_mpz_t(), 40) > 0) {
      found[c] += mult;
      continue;
    }
    if (is_perfect_square(c)) {
      pending.emplace_back(isqrt(c), 2 * mult);
      continue;
    }
    BigInt f = rho_split(c, budget);
    pending.emplace_back(f, mult);
    pending.emplace_back(BigInt(c / f), mult);
  }
  return {found.begin(), found.end()};
}

SquarefreeDecomposition squarefree_kernel(const BigInt& n, std::uint64_t effort) {
  SquarefreeDecomposition out{1, 1};
  for (const auto& [p, e] : factorize(n, effort)) {
    if (e % 2) out.d *= p;
    for (unsigned i = 0; i < e / 2; ++i) out.y *= p;
  }
  return out;
}

bool is_squarefree(const BigInt& n) {
  return squarefree_kernel(n).y == 1;
}

}  // namespace pellbaker
