#pragma once

#include <variant>
#include <vector>

#include "pellbaker/arith.hpp"

namespace pellbaker {

class ReducibleInput : public Error {
 public:
  using Error::Error;
};

// Minimal polynomial a_0 x^deg + ... + a_deg (primitive, a_0 > 0) together
// with the real root it describes.
struct AlgebraicDescriptor {
  std::vector<BigInt> coefficients;
  std::variant<BigRat, QuadraticValue> embedding;

  int degree() const { return static_cast<int>(coefficients.size()) - 1; }
};

// Validates primitivity, the leading sign, irreducibility and that the
// polynomial vanishes at the embedding.
AlgebraicDescriptor make_descriptor(std::vector<BigInt> coefficients,
                                    std::variant<BigRat, QuadraticValue> embedding);

// Minimal polynomial of an element of Q(sqrt D).
AlgebraicDescriptor descriptor_of(const QuadraticValue& value);

RealBall height_rational(const BigInt& p, const BigInt& q, long prec = kDefaultPrecision);
RealBall height_quadratic(const AlgebraicDescriptor& desc, long prec = kDefaultPrecision);
// Height of any element of Q(sqrt D), degree 1 or 2.
RealBall height(const QuadraticValue& value, long prec = kDefaultPrecision);
// max(log(2)/2, log P_l).
RealBall height_sqrt2_over_pell(unsigned long l, long prec = kDefaultPrecision);

}  // namespace pellbaker
