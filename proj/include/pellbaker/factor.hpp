#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "pellbaker/arith.hpp"

namespace pellbaker {

class FactorizationBudgetExceeded : public Error {
 public:
  using Error::Error;
};

// Pollard-rho iterations allowed per factorisation.
constexpr std::uint64_t kDefaultFactorEffort = 2'000'000;

// Prime factorisation of n >= 1 as (prime, exponent) pairs in increasing order.
std::vector<std::pair<BigInt, unsigned>> factorize(const BigInt& n,
                                                   std::uint64_t effort = kDefaultFactorEffort);

struct SquarefreeDecomposition {
  BigInt d;  // squarefree
  BigInt y;  // n = d * y^2
};

SquarefreeDecomposition squarefree_kernel(const BigInt& n,
                                          std::uint64_t effort = kDefaultFactorEffort);

bool is_squarefree(const BigInt& n);

}  // namespace pellbaker
