#pragma once

#include <optional>
#include <vector>

#include "pellbaker/arith.hpp"
#include "pellbaker/factor.hpp"

namespace pellbaker {

struct SqrtContinuedFraction {
  BigInt a0;
  std::vector<BigInt> period;
};

// Periodic expansion of sqrt(d); throws PerfectSquare.
SqrtContinuedFraction sqrt_cf(const BigInt& d);

struct FundamentalSolution {
  BigInt d;
  BigInt x1, y1;
  int epsilon = 1;  // x1^2 - d y1^2
  QuadraticValue delta;
  QuadraticValue eta;
};

FundamentalSolution fundamental_solution(const BigInt& d);

// x_{n+1} = 2 x1 x_n - eps x_{n-1}, x_0 = 1; optional y-track with y_0 = 0.
class XSequence {
 public:
  XSequence(const BigInt& x1, int epsilon);
  explicit XSequence(const FundamentalSolution& fs);

  const BigInt& x1() const { return x1_; }
  int epsilon() const { return eps_; }
  bool has_y() const { return has_y_; }
  const std::optional<BigInt>& d() const { return d_; }

  // x_n, y_n (extending the cache as needed).
  const BigInt& x(std::size_t n);
  const BigInt& y(std::size_t n);

 private:
  void extend(std::size_t n);

  BigInt x1_;
  int eps_;
  bool has_y_ = false;
  std::optional<BigInt> d_;
  std::vector<BigInt> xs_, ys_;
};

// [x_1, x_2, ...] up to and including the last term <= limit.
std::vector<BigInt> x_terms(const BigInt& x1, int epsilon, const BigInt& limit);

BigInt x_term(const BigInt& x1, int epsilon, unsigned k);

// The x1 >= 1 whose k-th x-term equals v, if any.
std::optional<BigInt> invert_x(const BigInt& v, unsigned k, int epsilon);

}  // namespace pellbaker
