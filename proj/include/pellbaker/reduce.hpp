#pragma once

#include <optional>
#include <vector>

#include "pellbaker/arith.hpp"

namespace pellbaker {

// Continued fraction of the number behind an oracle. Every stored quotient is
// certified: it is a common quotient of both exact endpoints of an enclosure.
class ContinuedFraction {
 public:
  explicit ContinuedFraction(RealOracle value);

  // Certifies quotients until `depth` are known (or the expansion terminates).
  void extend(std::size_t depth);

  const RealOracle& value() const { return value_; }
  const std::vector<BigInt>& quotients() const { return a_; }
  std::size_t depth() const { return a_.size(); }
  // True when the value is rational and the whole finite expansion is stored.
  bool terminated() const { return terminated_; }

  // Convergent k is p_k/q_k with p_{-1} = 1, q_{-1} = 0.
  const BigInt& p(std::size_t k) const;
  const BigInt& q(std::size_t k) const;

 private:
  void push(const BigInt& a);

  RealOracle value_;
  std::vector<BigInt> a_, p_, q_;
  bool terminated_ = false;
  long prec_ = 128;
};

ContinuedFraction cf_expand(const RealOracle& value, std::size_t depth);

struct LegendreResult {
  std::size_t N = 0;  // smallest index with q_N > M
  BigInt aM;          // max a_i for i <= N
};

// Extends `cf` as needed.
LegendreResult legendre_bound(ContinuedFraction& cf, const BigInt& M);

// Largest L with alpha^(2L) < (aM + 2) c n2max^2 / log(alpha).
BigInt legendre_apply(const BigInt& aM, const BigRat& c, const BigInt& n2max);

class AllConvergentsFailed : public Error {
 public:
  using Error::Error;
};

struct DPQuery {
  RealOracle tau;
  RealOracle mu;
  RealOracle A;
  RealOracle B;
  BigInt M;
};

struct DPResult {
  BigInt w_max;         // no solution with u <= M has w > w_max
  std::size_t index = 0;  // convergent used
  BigInt q;
  RealBall epsilon;
};

// No (u, v, w) with 0 < u <= M and w > w_max satisfies 0 < |u tau - v + mu| < A B^-w.
DPResult dp_reduce(const DPQuery& query, std::size_t max_attempts = 20);

using IntMatrix = std::vector<std::vector<BigInt>>;

class SingularBasis : public Error {
 public:
  using Error::Error;
};

struct LLLReduction {
  IntMatrix basis;      // rows are the reduced vectors
  IntMatrix transform;  // basis = transform * input, det(transform) = +-1
  std::vector<BigInt> d;  // d[i] = Gram determinant of the first i vectors, d[0] = 1
};

// Exact integral LLL on the rows of `basis`; lovasz in (1/4, 1).
LLLReduction lll_reduce_basis(const IntMatrix& basis, const BigRat& lovasz = BigRat(99, 100));

class ConditionFailed : public Error {
 public:
  using Error::Error;
};

struct LLLInstance {
  std::vector<RealOracle> tau;
  std::vector<BigInt> X;
  BigInt C;
};

struct LLLBound {
  BigRat bound;   // |sum x_i tau_i| >= bound for 0 < max|x_i/X_i| <= 1
  BigRat theta2;  // min |b_i*|^2
  BigRat Q;
  BigRat R;
  BigInt C;
};

// (t max X_i)^(t+1).
BigInt default_lll_C(const std::vector<BigInt>& X);

LLLBound lll_form_lower_bound(const LLLInstance& inst, const BigRat& lovasz = BigRat(99, 100));

}  // namespace pellbaker
