#include <doctest.h>

#include "oracle.hpp"
#include "pellbaker/arith.hpp"

using namespace pellbaker;

namespace {
const QuadraticValue kAlpha(1, 1, 2);
}

TEST_CASE("exact rational parsing") {
  BigInt e84;
  mpz_ui_pow_ui(e84.get_mpz_t(), 10, 84);
  CHECK(parse_big_int("3.8e85") == 38 * e84);
  CHECK(parse_big_int("-7") == -7);
  CHECK(parse_big_rat("3/4") == BigRat(3, 4));
  CHECK(parse_big_rat("0.125") == BigRat(1, 8));
  CHECK(parse_big_rat("2.5e-1") == BigRat(1, 4));
  CHECK_THROWS(parse_big_int("1.5"));
  CHECK_THROWS(parse_big_rat("abc"));
}

TEST_CASE("eval of quadratic values") {
  RealBall one = eval(QuadraticValue(1, 0, 2), 64);
  CHECK(one.contains(BigRat(1)));
  CHECK(one.radius() == 0);

  RealBall a = eval(kAlpha, 64);
  BigRat ref = 1 + oracle::sqrt_rat(2, 200);
  CHECK(oracle::agrees(a, ref, 200));
  CHECK(a.radius() <= BigRat(1, oracle::pow2(60)));

  RealBall b = eval(QuadraticValue(1, -1, 2), 64);
  CHECK(oracle::agrees(b, 1 - oracle::sqrt_rat(2, 200), 200));
  CHECK(b.is_negative());
}

TEST_CASE("log_ball against the series oracle") {
  CHECK(log_ball(RealBall(1), 64).contains(BigRat(0)));
  CHECK(oracle::agrees(log_ball(RealBall(4), 128), oracle::log_rat(4, 256), 256));
  CHECK(oracle::agrees(log_ball(kAlpha, 128), oracle::log_alpha(256), 256));
  for (int i = 0; i < 40; ++i) {
    BigRat x = oracle::rat(oracle::uniform(1, 100000), oracle::uniform(1, 1000));
    RealBall l = log_ball(RealBall(x, 160), 160);
    CHECK(oracle::agrees(l, oracle::log_rat(x, 300), 300));
  }
  CHECK_THROWS_AS(log_ball(RealBall(-1), 64), NonPositiveInput);
}

TEST_CASE("sqrt and exp") {
  for (int i = 0; i < 40; ++i) {
    BigRat x = oracle::rat(oracle::uniform(1, 100000), oracle::uniform(1, 1000));
    CHECK(oracle::agrees(sqrt(RealBall(x, 160)), oracle::sqrt_rat(x, 300), 300));
    CHECK(exp(log(RealBall(x, 160))).contains(x));
  }
}

TEST_CASE("ball_compare") {
  CHECK(ball_compare(RealBall(0), RealBall(1)) == Ordering::Less);
  CHECK(ball_compare(RealBall::from_interval(0, 2, 64), RealBall::from_interval(1, 3, 64)) ==
        Ordering::Undecided);
  CHECK(ball_compare(log_ball(RealBall(4), 64), log_ball(kAlpha, 64)) == Ordering::Greater);
}

TEST_CASE("property: arithmetic encloses exact rational results") {
  for (int i = 0; i < 200; ++i) {
    BigRat x = oracle::rat(oracle::uniform(-10000, 10000), oracle::uniform(1, 999));
    BigRat y = oracle::rat(oracle::uniform(-10000, 10000), oracle::uniform(1, 999));
    if (y == 0) y = 1;
    long prec = 24 + oracle::uniform(0, 100);
    RealBall bx(x, prec), by(y, prec);
    CHECK((bx + by).contains(x + y));
    CHECK((bx - by).contains(x - y));
    CHECK((bx * by).contains(x * y));
    CHECK((bx / by).contains(x / y));
  }
}

TEST_CASE("property: inclusion monotonicity under refinement") {
  // log(alpha) * sqrt(3) / (1 + log 4)
  auto expr = [](long p) {
    return log_ball(kAlpha, p) * sqrt(RealBall(3, p)) / (RealBall(1, p) + log_ball(RealBall(4, p), p));
  };
  const unsigned bits = 400;
  BigRat ref = oracle::log_alpha(bits) * oracle::sqrt_rat(3, bits) / (1 + oracle::log_rat(4, bits));
  for (long p : {32L, 64L, 128L, 256L}) {
    RealBall lo = expr(p), hi = expr(2 * p);
    CHECK(oracle::agrees(lo, ref, bits));
    CHECK(oracle::agrees(hi, ref, bits));
    CHECK(lo.overlaps(hi));
    CHECK(hi.radius() <= lo.radius());
  }
}

TEST_CASE("property: 2 log alpha overlaps log alpha^2") {
  for (long p : {32L, 64L, 200L}) {
    RealBall twice = log_ball(kAlpha, p) * RealBall(2, p);
    CHECK(twice.overlaps(log_ball(kAlpha.pow(2), p)));
  }
}

TEST_CASE("property: ball_compare never flips under refinement") {
  for (int i = 0; i < 100; ++i) {
    BigRat x = oracle::rat(oracle::uniform(1, 5000), oracle::uniform(1, 50));
    BigRat y = oracle::rat(oracle::uniform(1, 5000), oracle::uniform(1, 50));
    bool less = false, greater = false;
    for (long p : {8L, 16L, 64L, 256L}) {
      Ordering o = ball_compare(log_ball(RealBall(x, p), p), sqrt(RealBall(y, p)));
      less |= o == Ordering::Less;
      greater |= o == Ordering::Greater;
    }
    CHECK_FALSE((less && greater));
  }
}

TEST_CASE("certified floor and rounding") {
  CHECK(RealBall(BigRat(7, 2), 64).floor() == BigInt(3));
  CHECK_FALSE(RealBall::from_interval(BigRat(29, 10), BigRat(31, 10), 64).floor().has_value());
  CHECK_FALSE(RealBall::from_interval(BigRat(12, 5), BigRat(13, 5), 64).round_nearest().has_value());
  CHECK(RealBall::from_interval(BigRat(26, 10), BigRat(27, 10), 64).round_nearest() == BigInt(3));
  RealBall d = RealBall(BigRat(23, 10), 64).distance_to_integer();
  CHECK(d.contains(BigRat(3, 10)));
}

TEST_CASE("quadratic field arithmetic is exact") {
  QuadraticValue q(BigRat(99, 70), BigRat(-1), 2);  // 99/70 - sqrt 2
  CHECK(q.sign() == 1);
  CHECK(QuadraticValue(BigRat(-99, 70), BigRat(1), 2).sign() == -1);
  CHECK(kAlpha.norm() == -1);
  CHECK(kAlpha * kAlpha.inverse() == QuadraticValue(1));
  CHECK(kAlpha.pow(-3) * kAlpha.pow(3) == QuadraticValue(1));
  CHECK(kAlpha.pow(2) == QuadraticValue(3, 2, 2));
  CHECK(compare(kAlpha, QuadraticValue(BigRat(12, 5))) == 1);
  CHECK_THROWS(kAlpha + QuadraticValue(1, 1, 3));
  CHECK_THROWS_AS(QuadraticValue(0).inverse(), DivisionByZero);
}

TEST_CASE("precision escalation gives up at the ceiling") {
  long saved = precision_ceiling();
  set_precision_ceiling(256);
  int calls = 0;
  auto never = [&](long) -> std::optional<int> {
    ++calls;
    return std::nullopt;
  };
  CHECK_THROWS_AS(escalate(64, never), PrecisionExhausted);
  CHECK(calls == 3);  // 64, 128, 256
  auto at_128 = [](long p) -> std::optional<long> {
    if (p >= 128) return p;
    return std::nullopt;
  };
  CHECK(escalate(32, at_128) == 128);
  set_precision_ceiling(saved);
}
