#include "pellbaker/sequences.hpp"

#include <stdexcept>

namespace pellbaker {

SequenceFamily make_family(const std::string& name, const BigInt& t0, const BigInt& t1,
                           const BigInt& p, const BigInt& q) {
  SequenceFamily f;
  f.name = name;
  f.t0 = t0;
  f.t1 = t1;
  f.p = p;
  f.q = q;
  BigInt disc = p * p + 4 * q;
  if (disc <= 0 || is_perfect_square(disc)) {
    throw std::invalid_argument("make_family: characteristic roots must be real quadratic");
  }
  f.alpha = QuadraticValue(BigRat(p, 2), BigRat(1, 2), disc);
  f.beta = f.alpha.conj();
  f.binet_denominator = f.alpha - f.beta;
  QuadraticValue T0{BigRat(t0)}, T1{BigRat(t1)};
  f.coeff_alpha = (T1 - T0 * f.beta) / f.binet_denominator;
  f.coeff_beta = (T0 * f.alpha - T1) / f.binet_denominator;
  return f;
}

const SequenceFamily& pell_family() {
  static const SequenceFamily f = make_family("pell", 0, 1, 2, 1);
  return f;
}

const SequenceFamily& fibonacci_family() {
  static const SequenceFamily f = make_family("fibonacci", 0, 1, 1, 1);
  return f;
}

const SequenceFamily& lucas_family() {
  static const SequenceFamily f = make_family("lucas", 2, 1, 1, 1);
  return f;
}

const SequenceFamily& family_by_name(const std::string& name) {
  if (name == "pell") return pell_family();
  if (name == "fibonacci") return fibonacci_family();
  if (name == "lucas") return lucas_family();
  throw std::invalid_argument("unknown sequence family: " + name);
}

BigInt term(const SequenceFamily& family, unsigned long m) {
  if (m == 0) return family.t0;
  BigInt a = family.t0, b = family.t1, c;
  for (unsigned long k = 1; k < m; ++k) {
    c = family.p * b + family.q * a;
    a = std::move(b);
    b = std::move(c);
  }
  return b;
}

std::vector<BigInt> terms(const SequenceFamily& family, unsigned long n) {
  std::vector<BigInt> out;
  out.reserve(n + 1);
  out.push_back(family.t0);
  if (n >= 1) out.push_back(family.t1);
  for (unsigned long k = 2; k <= n; ++k) {
    out.push_back(family.p * out[k - 1] + family.q * out[k - 2]);
  }
  return out;
}

RealBall binet_residual(const SequenceFamily& family, unsigned long m, long prec) {
  RealBall a = eval(family.alpha, prec);
  RealBall b = eval(family.beta, prec);
  RealBall closed = eval(family.coeff_alpha, prec) * pow(a, m) +
                    eval(family.coeff_beta, prec) * pow(b, m);
  return RealBall(term(family, m), prec) - closed;
}

bool growth_check(const SequenceFamily& family, unsigned long m) {
  if (m < 1) throw std::invalid_argument("growth_check: m must be at least 1");
  QuadraticValue t{BigRat(term(family, m))};
  long k = static_cast<long>(m);
  return compare(family.alpha.pow(k - 2), t) <= 0 && compare(t, family.alpha.pow(k - 1)) <= 0;
}

ProductTable::ProductTable(const SequenceFamily& family, int lmax, int mmax)
    : family_(family.name), lmax_(lmax), mmax_(mmax) {
  if (lmax < 1 || mmax < lmax) {
    throw std::invalid_argument("product table requires 1 <= lmax <= mmax");
  }
  std::vector<BigInt> t = terms(family, static_cast<unsigned long>(mmax));
  for (int l = 1; l <= lmax; ++l) {
    for (int m = l; m <= mmax; ++m) entries_[t[l] * t[m]].emplace_back(l, m);
  }
}

const std::vector<IndexPair>* ProductTable::find(const BigInt& v) const {
  auto it = entries_.find(v);
  return it == entries_.end() ? nullptr : &it->second;
}

ProductTable build_product_table(const SequenceFamily& family, int lmax, int mmax) {
  return ProductTable(family, lmax, mmax);
}

std::optional<std::vector<IndexPair>> is_two_term_product(const ProductTable& table,
                                                          const BigInt& v) {
  if (const auto* hit = table.find(v)) return *hit;
  return std::nullopt;
}

}  // namespace pellbaker
