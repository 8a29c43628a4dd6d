#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

namespace pellbaker {

using BigInt = mpz_class;
using BigRat = mpq_class;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PrecisionExhausted : public Error {
 public:
  explicit PrecisionExhausted(long bits)
      : Error("precision ceiling of " + std::to_string(bits) + " bits exhausted") {}
};

class NonPositiveInput : public Error {
 public:
  using Error::Error;
};

class PerfectSquare : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
};

constexpr long kDefaultPrecision = 128;

// Upper limit for automatic precision doubling. Initialised from
// PELLBAKER_PREC_CEILING on first use, 40000 bits otherwise.
long precision_ceiling();
void set_precision_ceiling(long bits);

BigRat make_rat(const BigInt& num, const BigInt& den);
BigInt floor_div(const BigInt& a, const BigInt& b);
BigInt floor_of(const BigRat& r);
BigInt ceil_of(const BigRat& r);
BigInt isqrt(const BigInt& n);
bool is_perfect_square(const BigInt& n);
std::string to_decimal(const BigInt& v);
std::string to_decimal(const BigRat& v);

// Parses "123", "-7", "3.8e85", "1e90". The value must be integral.
BigInt parse_big_int(const std::string& text);
// Parses "p/q", decimals and scientific notation exactly.
BigRat parse_big_rat(const std::string& text);

// Closed real interval [mid - rad, mid + rad] with a binary floating
// midpoint and a radius that is always rounded upwards.
class RealBall {
 public:
  RealBall();
  explicit RealBall(long v, long prec = kDefaultPrecision);
  explicit RealBall(const BigInt& v, long prec = kDefaultPrecision);
  explicit RealBall(const BigRat& v, long prec = kDefaultPrecision);
  RealBall(const RealBall& other);
  RealBall(RealBall&& other) noexcept;
  RealBall& operator=(const RealBall& other);
  RealBall& operator=(RealBall&& other) noexcept;
  ~RealBall();

  // Smallest ball containing the closed interval [lo, hi].
  static RealBall from_interval(const BigRat& lo, const BigRat& hi, long prec);

  long precision() const;
  BigRat midpoint() const;
  BigRat radius() const;
  BigRat lower() const;
  BigRat upper() const;
  double to_double() const;
  double radius_double() const;
  bool is_exact() const;

  bool contains(const BigRat& v) const;
  bool contains(const RealBall& other) const;
  bool overlaps(const RealBall& other) const;
  bool is_positive() const;
  bool is_negative() const;
  bool contains_zero() const;

  // Certified floor / nearest integer, empty when the ball straddles an
  // integer / a half-integer.
  std::optional<BigInt> floor() const;
  std::optional<BigInt> round_nearest() const;

  // Ball around an enclosing set of ||x||, the distance to the nearest integer.
  RealBall distance_to_integer() const;

  // "mid ± rad" with `digits` significant digits in the midpoint.
  std::string to_string(int digits = 20) const;

  RealBall operator-() const;
  friend RealBall operator+(const RealBall& a, const RealBall& b);
  friend RealBall operator-(const RealBall& a, const RealBall& b);
  friend RealBall operator*(const RealBall& a, const RealBall& b);
  friend RealBall operator/(const RealBall& a, const RealBall& b);
  RealBall& operator+=(const RealBall& o) { return *this = *this + o; }
  RealBall& operator-=(const RealBall& o) { return *this = *this - o; }
  RealBall& operator*=(const RealBall& o) { return *this = *this * o; }
  RealBall& operator/=(const RealBall& o) { return *this = *this / o; }

  friend RealBall abs(const RealBall& x);
  friend RealBall sqrt(const RealBall& x);
  friend RealBall log(const RealBall& x);
  friend RealBall exp(const RealBall& x);
  friend RealBall max(const RealBall& a, const RealBall& b);
  friend RealBall min(const RealBall& a, const RealBall& b);
  friend RealBall pow(const RealBall& x, unsigned long n);

 private:
  struct Blank {};
  RealBall(long prec, Blank);
  static RealBall from_endpoints(mpfr_srcptr lo, mpfr_srcptr hi, long prec);
  void add_rounding_error(int ternary);

  mpfr_t mid_;
  mpfr_t rad_;
};

enum class Ordering { Less, Greater, Undecided };

Ordering ball_compare(const RealBall& x, const RealBall& y);

// Exact a + b*sqrt(D) with D squarefree (D == 1 means a rational value).
class QuadraticValue {
 public:
  QuadraticValue();
  explicit QuadraticValue(const BigRat& a);
  QuadraticValue(const BigRat& a, const BigRat& b, const BigInt& D);

  const BigRat& a() const { return a_; }
  const BigRat& b() const { return b_; }
  const BigInt& D() const { return D_; }
  bool is_rational() const { return b_ == 0; }

  int sign() const;
  QuadraticValue conj() const;
  BigRat norm() const;
  BigRat trace() const;
  QuadraticValue inverse() const;
  QuadraticValue pow(long n) const;
  std::string to_string() const;

  QuadraticValue operator-() const;
  friend QuadraticValue operator+(const QuadraticValue& x, const QuadraticValue& y);
  friend QuadraticValue operator-(const QuadraticValue& x, const QuadraticValue& y);
  friend QuadraticValue operator*(const QuadraticValue& x, const QuadraticValue& y);
  friend QuadraticValue operator/(const QuadraticValue& x, const QuadraticValue& y);
  friend bool operator==(const QuadraticValue& x, const QuadraticValue& y);
  friend int compare(const QuadraticValue& x, const QuadraticValue& y);

 private:
  BigRat a_, b_;
  BigInt D_;
};

RealBall eval(const QuadraticValue& q, long prec);
RealBall log_ball(const RealBall& x, long prec);
RealBall log_ball(const QuadraticValue& q, long prec);

// Produces enclosures of a fixed real number at any requested precision.
// `exact` is set when the number is known to be rational.
struct RealOracle {
  std::function<RealBall(long)> eval;
  std::optional<BigRat> exact;

  RealBall operator()(long prec) const { return eval(prec); }
};

RealOracle constant_oracle(const BigRat& v);
RealOracle quadratic_oracle(const QuadraticValue& q);
RealOracle log_oracle(const QuadraticValue& q);

// Runs `attempt(prec)` at start, 2*start, ... until it yields a value;
// throws PrecisionExhausted past precision_ceiling().
template <class F>
auto escalate(long start, F&& attempt) -> typename decltype(attempt(start))::value_type {
  long ceiling = precision_ceiling();
  for (long prec = start; prec <= ceiling; prec *= 2) {
    if (auto r = attempt(prec)) return *r;
  }
  throw PrecisionExhausted(ceiling);
}

}  // namespace pellbaker
