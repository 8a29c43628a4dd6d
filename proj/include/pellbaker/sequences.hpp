#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pellbaker/arith.hpp"

namespace pellbaker {

// t_{k+2} = p t_{k+1} + q t_k with t_m = coeff_alpha * alpha^m + coeff_beta * beta^m.
struct SequenceFamily {
  std::string name;
  BigInt t0, t1;
  BigInt p, q;
  QuadraticValue alpha, beta;
  QuadraticValue binet_denominator;  // alpha - beta
  QuadraticValue coeff_alpha, coeff_beta;
};

SequenceFamily make_family(const std::string& name, const BigInt& t0, const BigInt& t1,
                           const BigInt& p, const BigInt& q);
const SequenceFamily& pell_family();
const SequenceFamily& fibonacci_family();
const SequenceFamily& lucas_family();
// "pell", "fibonacci" or "lucas"; throws std::invalid_argument otherwise.
const SequenceFamily& family_by_name(const std::string& name);

BigInt term(const SequenceFamily& family, unsigned long m);
// Terms t_0 .. t_n.
std::vector<BigInt> terms(const SequenceFamily& family, unsigned long n);

RealBall binet_residual(const SequenceFamily& family, unsigned long m, long prec);

// alpha^(m-2) <= t_m <= alpha^(m-1), decided exactly in Q(sqrt D).
bool growth_check(const SequenceFamily& family, unsigned long m);

using IndexPair = std::pair<int, int>;

class ProductTable {
 public:
  ProductTable(const SequenceFamily& family, int lmax, int mmax);

  const std::string& family_name() const { return family_; }
  int lmax() const { return lmax_; }
  int mmax() const { return mmax_; }
  std::size_t size() const { return entries_.size(); }
  const BigInt& max_value() const { return entries_.rbegin()->first; }
  const std::vector<IndexPair>* find(const BigInt& v) const;
  const std::map<BigInt, std::vector<IndexPair>>& entries() const { return entries_; }

 private:
  std::string family_;
  int lmax_, mmax_;
  std::map<BigInt, std::vector<IndexPair>> entries_;
};

ProductTable build_product_table(const SequenceFamily& family, int lmax, int mmax);

std::optional<std::vector<IndexPair>> is_two_term_product(const ProductTable& table,
                                                          const BigInt& v);

}  // namespace pellbaker
