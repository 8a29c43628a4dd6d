#include <doctest.h>

#include <map>

#include "oracle.hpp"
#include "pellbaker/sequences.hpp"

using namespace pellbaker;

namespace {

std::vector<BigInt> naive_terms(long a, long b, long p, long q, int n) {
  std::vector<BigInt> t = {a, b};
  while (static_cast<int>(t.size()) <= n) t.push_back(p * t[t.size() - 1] + q * t[t.size() - 2]);
  return t;
}

std::map<BigInt, std::vector<IndexPair>> naive_table(const std::vector<BigInt>& t, int lmax, int mmax) {
  std::map<BigInt, std::vector<IndexPair>> out;
  for (int l = 1; l <= lmax; ++l) {
    for (int m = l; m <= mmax; ++m) out[t[l] * t[m]].push_back({l, m});
  }
  for (auto& [v, ps] : out) std::sort(ps.begin(), ps.end());
  return out;
}

}  // namespace

TEST_CASE("Pell terms") {
  const std::vector<long> listed = {0, 1, 2, 5, 12, 29, 70, 169, 408, 985, 2378, 5741, 13860, 33461};
  auto t = terms(pell_family(), 13);
  for (std::size_t i = 0; i < listed.size(); ++i) CHECK(t[i] == listed[i]);
  CHECK(term(pell_family(), 13) == 33461);
  CHECK(term(pell_family(), 0) == 0);
}

TEST_CASE("Fibonacci and Lucas terms follow their recurrences") {
  CHECK(term(fibonacci_family(), 7) == 13);
  auto f = naive_terms(0, 1, 1, 1, 90);
  auto l = naive_terms(2, 1, 1, 1, 90);
  for (int m = 0; m <= 90; ++m) {
    CHECK(term(fibonacci_family(), m) == f[m]);
    CHECK(term(lucas_family(), m) == l[m]);
  }
  CHECK_THROWS_AS(family_by_name("tribonacci"), std::invalid_argument);
}

TEST_CASE("Binet residuals") {
  CHECK(binet_residual(pell_family(), 1, 64).contains(BigRat(0)));
  RealBall r20 = binet_residual(pell_family(), 20, 128);
  CHECK(r20.contains(BigRat(0)));
  CHECK(r20.radius() < BigRat(1, 1000000));
  CHECK(binet_residual(fibonacci_family(), 10, 128).contains(BigRat(0)));
}

TEST_CASE("property: terms are the nearest integers to the Binet expression") {
  for (unsigned long m = 0; m <= 200; ++m) {
    RealBall r = binet_residual(pell_family(), m, 256);
    CHECK(r.contains(BigRat(0)));
    CHECK(r.radius() < BigRat(1, 2));
  }
}

TEST_CASE("growth bounds alpha^(m-2) <= P_m <= alpha^(m-1)") {
  CHECK(growth_check(pell_family(), 1));
  CHECK(growth_check(pell_family(), 5));
  for (unsigned long m = 1; m <= 500; ++m) CHECK(growth_check(pell_family(), m));
}

TEST_CASE("product tables") {
  auto t22 = build_product_table(pell_family(), 2, 2);
  CHECK(t22.size() == 3);
  CHECK(*t22.find(1) == std::vector<IndexPair>{{1, 1}});
  CHECK(*t22.find(2) == std::vector<IndexPair>{{1, 2}});
  CHECK(*t22.find(4) == std::vector<IndexPair>{{2, 2}});

  auto t33 = build_product_table(pell_family(), 3, 3);
  CHECK(*t33.find(5) == std::vector<IndexPair>{{1, 3}});
  CHECK(*t33.find(10) == std::vector<IndexPair>{{2, 3}});
  CHECK(*t33.find(25) == std::vector<IndexPair>{{3, 3}});

  auto f34 = build_product_table(fibonacci_family(), 3, 4);
  auto six = is_two_term_product(f34, 6);
  REQUIRE(six.has_value());
  CHECK(std::find(six->begin(), six->end(), IndexPair{3, 4}) != six->end());

  auto big = build_product_table(pell_family(), 200, 200);
  CHECK(*is_two_term_product(big, 4) == std::vector<IndexPair>{{2, 2}});
  CHECK_FALSE(is_two_term_product(big, 3).has_value());
  CHECK(*is_two_term_product(big, 1) == std::vector<IndexPair>{{1, 1}});
}

TEST_CASE("property: table lookups agree with a naive double loop") {
  auto t = naive_terms(0, 1, 2, 1, 60);
  for (auto [lmax, mmax] : std::vector<IndexPair>{{1, 1}, {5, 7}, {13, 20}, {33, 50}, {50, 50}}) {
    auto table = build_product_table(pell_family(), lmax, mmax);
    auto naive = naive_table(t, lmax, mmax);
    CHECK(table.size() == naive.size());
    for (const auto& [v, ps] : naive) {
      auto hit = table.find(v);
      REQUIRE(hit != nullptr);
      auto got = *hit;
      std::sort(got.begin(), got.end());
      CHECK(got == ps);
    }
  }
  CHECK_THROWS_AS(build_product_table(pell_family(), 20, 13), std::invalid_argument);
}
