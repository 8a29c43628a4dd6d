#include "pellbaker/heights.hpp"

#include <stdexcept>

#include "pellbaker/sequences.hpp"

namespace pellbaker {
namespace {

BigInt content(const std::vector<BigInt>& c) {
  BigInt g = 0;
  for (const auto& x : c) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

RealBall log_max_one(const QuadraticValue& root, long prec) {
  QuadraticValue mag = root.sign() < 0 ? -root : root;
  if (compare(mag, QuadraticValue(BigRat(1))) <= 0) return RealBall(0L, prec);
  return log_ball(mag, prec);
}

}  // namespace

AlgebraicDescriptor make_descriptor(std::vector<BigInt> coefficients,
                                    std::variant<BigRat, QuadraticValue> embedding) {
  if (coefficients.size() != 2 && coefficients.size() != 3) {
    throw std::invalid_argument("only degree 1 and 2 descriptors are supported");
  }
  if (coefficients[0] <= 0) throw std::invalid_argument("leading coefficient must be positive");
  if (content(coefficients) != 1) throw std::invalid_argument("polynomial must be primitive");
  QuadraticValue root = std::holds_alternative<BigRat>(embedding)
                            ? QuadraticValue(std::get<BigRat>(embedding))
                            : std::get<QuadraticValue>(embedding);
  if (coefficients.size() == 3) {
    BigInt disc = coefficients[1] * coefficients[1] - 4 * coefficients[0] * coefficients[2];
    if (is_perfect_square(disc)) {
      throw ReducibleInput("quadratic with square discriminant " + to_decimal(disc));
    }
  }
  QuadraticValue acc;
  for (const auto& c : coefficients) acc = acc * root + QuadraticValue(BigRat(c));
  if (!(acc == QuadraticValue())) {
    throw std::invalid_argument("polynomial does not vanish at the embedding");
  }
  return AlgebraicDescriptor{std::move(coefficients), std::move(embedding)};
}

AlgebraicDescriptor descriptor_of(const QuadraticValue& value) {
  if (value.is_rational()) {
    const BigRat& r = value.a();
    return make_descriptor({r.get_den(), BigInt(-r.get_num())}, r);
  }
  BigRat c1 = -value.trace(), c2 = value.norm();
  BigInt l;
  mpz_lcm(l.get_mpz_t(), c1.get_den_mpz_t(), c2.get_den_mpz_t());
  std::vector<BigInt> coeffs = {l, BigInt(c1 * BigRat(l)), BigInt(c2 * BigRat(l))};
  BigInt g = content(coeffs);
  for (auto& c : coeffs) c /= g;
  return make_descriptor(std::move(coeffs), value);
}

RealBall height_rational(const BigInt& p, const BigInt& q, long prec) {
  if (q <= 0) throw std::invalid_argument("height_rational: q must be positive");
  BigRat r = make_rat(p, q);
  BigInt num = abs(r.get_num());
  BigInt m = num > r.get_den() ? num : r.get_den();
  if (m == 1) return RealBall(0L, prec);
  return log_ball(RealBall(m, prec), prec);
}

RealBall height_quadratic(const AlgebraicDescriptor& desc, long prec) {
  if (desc.degree() == 1) {
    const BigRat& r = std::get<BigRat>(desc.embedding);
    return height_rational(r.get_num(), r.get_den(), prec);
  }
  QuadraticValue root = std::holds_alternative<QuadraticValue>(desc.embedding)
                            ? std::get<QuadraticValue>(desc.embedding)
                            : QuadraticValue(std::get<BigRat>(desc.embedding));
  RealBall sum = log_max_one(root, prec) + log_max_one(root.conj(), prec);
  if (desc.coefficients[0] != 1) sum = sum + log_ball(RealBall(desc.coefficients[0], prec), prec);
  return sum / RealBall(2L, prec);
}

RealBall height(const QuadraticValue& value, long prec) {
  return height_quadratic(descriptor_of(value), prec);
}

RealBall height_sqrt2_over_pell(unsigned long l, long prec) {
  if (l < 1) throw std::invalid_argument("height_sqrt2_over_pell: l must be at least 1");
  BigInt p = term(pell_family(), l);
  if (p * p >= 2) return log_ball(RealBall(p, prec), prec);
  return log_ball(RealBall(2L, prec), prec) / RealBall(2L, prec);
}

}  // namespace pellbaker
