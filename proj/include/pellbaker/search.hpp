#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pellbaker/arith.hpp"
#include "pellbaker/sequences.hpp"

namespace pellbaker {

struct SearchBox {
  std::string family = "pell";
  int l1max = 1, m1max = 1, l2max = 1, m2max = 1;
  int n2max = 2;
  std::vector<int> epsilons = {1, -1};
};

void validate(const SearchBox& box);

// Two solutions x_{n1} < x_{n2} of one Pell equation, both two-term products.
struct WitnessPair {
  BigInt x1;
  int epsilon = 1;
  int n1 = 0, n2 = 0;
  IndexPair first{0, 0}, second{0, 0};
  BigInt x_n1, x_n2;
  std::optional<BigInt> d;  // squarefree kernel of x1^2 - epsilon, when factorable
};

bool operator==(const WitnessPair& a, const WitnessPair& b);

// Exhaustive within the box; output sorted and independent of `jobs`.
std::vector<WitnessPair> find_witnesses(const SearchBox& box, unsigned jobs = 1);

// Re-checks a witness by recomputing the recurrence and the products.
bool verify_witness(const WitnessPair& w, const SequenceFamily& family);

// A d whose n-th solution is a product.
struct SolutionRecord {
  BigInt d;
  BigInt x1;
  int epsilon = 1;
  int n = 0;
  BigInt x_n;
  IndexPair pair{0, 0};
};

struct DirectScanResult {
  std::vector<WitnessPair> witnesses;
  std::vector<SolutionRecord> singles;  // every product hit, witnesses included
};

// For every squarefree d in [2, dmax], the first nmax solutions against products with indices <= lmax.
DirectScanResult direct_d_scan(const std::string& family, const BigInt& dmax, int nmax, int lmax);

class MismatchFound : public Error {
 public:
  using Error::Error;
};

struct CrossValidation {
  std::size_t witnesses = 0;  // number of (d, n1, n2) triples agreed on
  std::vector<BigInt> ds;     // distinct d values, increasing
};

// Compares direct_d_scan with find_witnesses on the covering box; throws MismatchFound.
CrossValidation cross_validate(const std::string& family, const BigInt& dmax, int nmax, int lmax,
                               unsigned jobs = 1);

}  // namespace pellbaker
