#include <doctest.h>

#include "oracle.hpp"
#include "pellbaker/heights.hpp"
#include "pellbaker/pelleq.hpp"
#include "pellbaker/sequences.hpp"

using namespace pellbaker;

namespace {

const unsigned kBits = 300;

// A ball that may have been widened: contains the reference up to 2^-(bits-8).
bool has(const RealBall& b, const BigRat& ref) { return oracle::agrees(b, ref, kBits); }

QuadraticValue random_quadratic(const BigInt& D) {
  BigRat a = oracle::rat(oracle::uniform(-30, 30), oracle::uniform(1, 6));
  BigRat b = oracle::rat(oracle::uniform(-30, 30), oracle::uniform(1, 6));
  if (a == 0 && b == 0) a = 1;
  return QuadraticValue(a, b, D);
}

}  // namespace

TEST_CASE("heights of rationals") {
  CHECK(has(height_rational(2, 1, 256), oracle::log_rat(2, kBits)));
  CHECK(height_rational(1, 1).contains(BigRat(0)));
  CHECK(has(height_rational(5, 3, 256), oracle::log_rat(5, kBits)));
  CHECK(has(height_rational(-6, 4, 256), oracle::log_rat(3, kBits)));
}

TEST_CASE("heights of quadratic numbers") {
  QuadraticValue alpha(1, 1, 2);
  auto da = make_descriptor({1, -2, -1}, alpha);
  CHECK(has(height_quadratic(da, 256), oracle::log_alpha(kBits) / 2));

  auto fs = fundamental_solution(5);  // delta = 2 + sqrt 5, eps = -1
  auto dd = make_descriptor({1, -2 * fs.x1, fs.epsilon}, fs.delta);
  BigRat log_delta = oracle::log_rat(2 + oracle::sqrt_rat(5, kBits + 16), kBits);
  CHECK(has(height_quadratic(dd, 256), log_delta / 2));

  auto ds = make_descriptor({1, 0, -2}, QuadraticValue(0, 1, 2));
  CHECK(has(height_quadratic(ds, 256), oracle::log_rat(2, kBits) / 2));

  CHECK_THROWS_AS(make_descriptor({1, 0, -4}, QuadraticValue(2)), ReducibleInput);
  CHECK_THROWS(make_descriptor({1, -2, -1}, QuadraticValue(1, -1, 3)));
}

TEST_CASE("heights of sqrt2 / P_l") {
  CHECK(has(height_sqrt2_over_pell(1, 256), oracle::log_rat(2, kBits) / 2));
  CHECK(has(height_sqrt2_over_pell(2, 256), oracle::log_rat(2, kBits)));
  CHECK(has(height_sqrt2_over_pell(7, 256), oracle::log_rat(169, kBits)));
}

TEST_CASE("closed form for sqrt2 / P_l against the minimal polynomial") {
  // odd l: P_l is odd and P_l^2 x^2 - 2 is primitive, so the two agree;
  // even l: the content 2 drops out and the closed form is an upper bound.
  for (unsigned long l = 1; l <= 40; ++l) {
    BigInt P = term(pell_family(), l);
    RealBall direct = height(QuadraticValue(0, BigRat(1, P), 2), 256);
    RealBall closed = height_sqrt2_over_pell(l, 256);
    if (l % 2 == 1) {
      CHECK(direct.overlaps(closed));
    } else {
      CHECK(ball_compare(direct, closed) != Ordering::Greater);
    }
  }
}

TEST_CASE("property: h(xy) <= h(x) + h(y) and h(x^s) = |s| h(x)") {
  for (int i = 0; i < 50; ++i) {
    BigInt D = std::vector<long>{2, 3, 5, 6, 7, 10, 11}[oracle::uniform(0, 6)];
    QuadraticValue x = random_quadratic(D), y = random_quadratic(D);
    QuadraticValue xy = x * y;
    if (xy == QuadraticValue(0)) continue;
    RealBall hx = height(x, 256), hy = height(y, 256);
    CHECK(ball_compare(height(xy, 256), hx + hy) != Ordering::Greater);
    long s = oracle::uniform(-4, 4);
    if (s == 0) s = 2;
    RealBall hs = height(x.pow(s), 256);
    CHECK(hs.overlaps(hx * RealBall(std::labs(s), 256)));
  }
}

TEST_CASE("property: a unit above 1 has height half its log") {
  for (long d : {2L, 3L, 5L, 6L, 7L, 13L, 29L, 61L}) {
    auto fs = fundamental_solution(d);
    for (long n = 1; n <= 4; ++n) {
      QuadraticValue u = fs.delta.pow(n);
      RealBall h = height(u, 256);
      CHECK(h.overlaps(log_ball(u, 256) / RealBall(2, 256)));
    }
  }
}
