#include <doctest.h>

#include "oracle.hpp"
#include "properties.hpp"
#include "pellbaker/factor.hpp"
#include "pellbaker/pelleq.hpp"

using namespace pellbaker;

namespace {

std::vector<long> to_longs(const std::vector<BigInt>& v) {
  std::vector<long> out;
  for (const auto& x : v) out.push_back(x.get_si());
  return out;
}

std::vector<long> squarefree_upto(long n) {
  std::vector<long> out;
  for (long d = 2; d <= n; ++d) {
    if (is_squarefree(d)) out.push_back(d);
  }
  return out;
}

}  // namespace

TEST_CASE("periodic continued fractions of square roots") {
  auto c2 = sqrt_cf(2);
  CHECK(c2.a0 == 1);
  CHECK(to_longs(c2.period) == std::vector<long>{2});
  auto c3 = sqrt_cf(3);
  CHECK(c3.a0 == 1);
  CHECK(to_longs(c3.period) == std::vector<long>{1, 2});
  auto c7 = sqrt_cf(7);
  CHECK(c7.a0 == 2);
  CHECK(to_longs(c7.period) == std::vector<long>{1, 1, 1, 4});
  CHECK_THROWS_AS(sqrt_cf(49), PerfectSquare);
}

TEST_CASE("fundamental solutions") {
  auto f2 = fundamental_solution(2);
  CHECK(f2.x1 == 1);
  CHECK(f2.y1 == 1);
  CHECK(f2.epsilon == -1);
  auto f3 = fundamental_solution(3);
  CHECK(f3.x1 == 2);
  CHECK(f3.y1 == 1);
  CHECK(f3.epsilon == 1);
  auto f7 = fundamental_solution(7);
  CHECK(f7.x1 == 8);
  CHECK(f7.y1 == 3);
  CHECK(f7.epsilon == 1);
  CHECK_THROWS_AS(fundamental_solution(16), PerfectSquare);
}

TEST_CASE("fundamental solutions are minimal by brute force") {
  for (long d : squarefree_upto(60)) {
    auto fs = fundamental_solution(d);
    long best_y = 0;
    for (long y = 1; best_y == 0; ++y) {
      for (long s : {-1L, 1L}) {
        BigInt x2 = BigInt(d) * y * y + s;
        if (is_perfect_square(x2) && best_y == 0) best_y = y;
      }
    }
    CHECK(fs.y1 == best_y);
  }
}

TEST_CASE("x-terms") {
  CHECK(to_longs(x_terms(1, -1, 10)) == std::vector<long>{1, 3, 7});
  CHECK(to_longs(x_terms(2, 1, 30)) == std::vector<long>{2, 7, 26});
  CHECK(to_longs(x_terms(2, -1, 9)) == std::vector<long>{2, 9});
}

TEST_CASE("inverting x-terms") {
  CHECK(invert_x(3, 2, -1) == BigInt(1));
  CHECK(invert_x(7, 2, 1) == BigInt(2));
  CHECK_FALSE(invert_x(5, 2, -1).has_value());
}

TEST_CASE("property: invert_x round trip") {
  for (long x1 = 1; x1 <= 1000; ++x1) {
    for (int eps : {1, -1}) {
      for (unsigned k = 1; k <= 8; ++k) {
        BigInt v = x_term(x1, eps, k);
        auto back = invert_x(v, k, eps);
        // x1 = 1 with eps = +1 is the constant sequence, not a Pell solution
        if (x1 == 1 && eps == 1) continue;
        REQUIRE(back.has_value());
        CHECK(*back == x1);
      }
    }
  }
}

TEST_CASE("property: x_n^2 - d y_n^2 = eps^n") {
  auto r = props::pell_identity(100, 15);
  INFO(r.first);
  CHECK(r.ok());
}

TEST_CASE("property: x-terms match ball evaluation of (delta^n + eta^n)/2") {
  for (long d : squarefree_upto(50)) {
    auto fs = fundamental_solution(d);
    XSequence seq(fs);
    RealBall delta = eval(fs.delta, 256), eta = eval(fs.eta, 256);
    for (unsigned long n = 1; n <= 12; ++n) {
      RealBall v = (pow(delta, n) + pow(eta, n)) / RealBall(2, 256);
      auto r = v.round_nearest();
      REQUIRE(r.has_value());
      CHECK(*r == seq.x(n));
    }
  }
}

TEST_CASE("property: delta^n / alpha^2 <= x_n") {
  QuadraticValue alpha2 = QuadraticValue(1, 1, 2).pow(2);
  for (long d : squarefree_upto(50)) {
    auto fs = fundamental_solution(d);
    XSequence seq(fs);
    RealBall delta = eval(fs.delta, 256), a2 = eval(alpha2, 256);
    for (unsigned long n = 1; n <= 12; ++n) {
      CHECK(ball_compare(pow(delta, n) / a2, RealBall(seq.x(n), 256)) == Ordering::Less);
    }
  }
}

// x_n is about delta^n / 2, which exceeds delta^n / alpha; the upper half of
// the sandwich fails already for d = 2, n = 1 (x_1 = 1 = delta / alpha).
TEST_CASE("property: x_n < delta^n / alpha" * doctest::should_fail()) {
  QuadraticValue alpha(1, 1, 2);
  for (long d : squarefree_upto(50)) {
    auto fs = fundamental_solution(d);
    XSequence seq(fs);
    for (long n = 1; n <= 12; ++n) {
      QuadraticValue bound = fs.delta.pow(n);
      RealBall ub = eval(bound, 256) / eval(alpha, 256);
      REQUIRE(ball_compare(RealBall(seq.x(n), 256), ub) == Ordering::Less);
    }
  }
}

TEST_CASE("corrected upper end: x_n < delta^n") {
  for (long d : squarefree_upto(50)) {
    auto fs = fundamental_solution(d);
    XSequence seq(fs);
    for (long n = 1; n <= 12; ++n) {
      CHECK(compare(QuadraticValue(BigRat(seq.x(n))), fs.delta.pow(n)) < 0);
    }
  }
}
