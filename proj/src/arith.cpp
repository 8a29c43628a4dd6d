#include "pellbaker/arith.hpp"

#include <atomic>
#include <cctype>
#include <cstdlib>
#include <vector>

#include "pellbaker/factor.hpp"

namespace pellbaker {
namespace {

constexpr long kRadPrec = 30;
constexpr long kDefaultCeiling = 40000;

std::atomic<long> g_ceiling{-1};

BigRat to_rat(mpfr_srcptr x) {
  if (mpfr_zero_p(x)) return BigRat(0);
  BigInt z;
  mpfr_exp_t e = mpfr_get_z_2exp(z.get_mpz_t(), x);
  if (e >= 0) {
    mpz_mul_2exp(z.get_mpz_t(), z.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
    return BigRat(z);
  }
  BigInt den;
  mpz_setbit(den.get_mpz_t(), static_cast<mp_bitcnt_t>(-e));
  return make_rat(z, den);
}

struct Tmp {
  mpfr_t v;
  explicit Tmp(long prec) { mpfr_init2(v, prec); }
  ~Tmp() { mpfr_clear(v); }
  Tmp(const Tmp&) = delete;
  Tmp& operator=(const Tmp&) = delete;
};

BigInt parse_unsigned_digits(const std::string& s) {
  if (s.empty()) return BigInt(0);
  for (char ch : s) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) {
      throw std::invalid_argument("malformed number: " + s);
    }
  }
  return BigInt(s, 10);
}

BigRat parse_decimal(const std::string& text) {
  std::string s = text;
  bool neg = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    neg = s[0] == '-';
    s = s.substr(1);
  }
  long exponent = 0;
  auto epos = s.find_first_of("eE");
  if (epos != std::string::npos) {
    std::string ex = s.substr(epos + 1);
    s = s.substr(0, epos);
    bool eneg = false;
    if (!ex.empty() && (ex[0] == '-' || ex[0] == '+')) {
      eneg = ex[0] == '-';
      ex = ex.substr(1);
    }
    if (ex.empty()) throw std::invalid_argument("malformed exponent: " + text);
    exponent = parse_unsigned_digits(ex).get_si();
    if (eneg) exponent = -exponent;
  }
  auto dot = s.find('.');
  std::string ip = s, fp;
  if (dot != std::string::npos) {
    ip = s.substr(0, dot);
    fp = s.substr(dot + 1);
  }
  if (ip.empty() && fp.empty()) throw std::invalid_argument("malformed number: " + text);
  BigInt mant = parse_unsigned_digits(ip + fp);
  exponent -= static_cast<long>(fp.size());
  BigInt ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  BigRat r = exponent >= 0 ? BigRat(mant * ten_pow) : make_rat(mant, ten_pow);
  return neg ? BigRat(-r) : r;
}

}  // namespace

long precision_ceiling() {
  long v = g_ceiling.load();
  if (v < 0) {
    v = kDefaultCeiling;
    if (const char* env = std::getenv("PELLBAKER_PREC_CEILING")) {
      long parsed = std::strtol(env, nullptr, 10);
      if (parsed >= 64) v = parsed;
    }
    g_ceiling.store(v);
  }
  return v;
}

void set_precision_ceiling(long bits) {
  if (bits < 64) throw std::invalid_argument("precision ceiling must be at least 64 bits");
  g_ceiling.store(bits);
}

BigRat make_rat(const BigInt& num, const BigInt& den) {
  if (den == 0) throw DivisionByZero("zero denominator");
  BigRat r(num, den);
  r.canonicalize();
  return r;
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

BigInt floor_of(const BigRat& r) { return floor_div(r.get_num(), r.get_den()); }

BigInt ceil_of(const BigRat& r) {
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

BigInt isqrt(const BigInt& n) {
  if (n < 0) throw NonPositiveInput("isqrt of negative integer");
  BigInt r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

bool is_perfect_square(const BigInt& n) {
  return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

std::string to_decimal(const BigInt& v) { return v.get_str(10); }

std::string to_decimal(const BigRat& v) { return v.get_str(10); }

BigInt parse_big_int(const std::string& text) {
  BigRat r = parse_big_rat(text);
  if (r.get_den() != 1) throw std::invalid_argument("not an integer: " + text);
  return r.get_num();
}

BigRat parse_big_rat(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) return parse_decimal(text);
  BigRat n = parse_decimal(text.substr(0, slash));
  BigRat d = parse_decimal(text.substr(slash + 1));
  if (d == 0) throw DivisionByZero("zero denominator in " + text);
  BigRat r = n / d;
  r.canonicalize();
  return r;
}

// ---------------------------------------------------------------- RealBall

RealBall::RealBall(long prec, Blank) {
  mpfr_init2(mid_, prec);
  mpfr_init2(rad_, kRadPrec);
  mpfr_set_zero(mid_, 1);
  mpfr_set_zero(rad_, 1);
}

RealBall::RealBall() : RealBall(64L, Blank{}) {}

RealBall::RealBall(long v, long prec) : RealBall(prec, Blank{}) {
  int t = mpfr_set_si(mid_, v, MPFR_RNDN);
  add_rounding_error(t);
}

RealBall::RealBall(const BigInt& v, long prec) : RealBall(prec, Blank{}) {
  int t = mpfr_set_z(mid_, v.get_mpz_t(), MPFR_RNDN);
  add_rounding_error(t);
}

RealBall::RealBall(const BigRat& v, long prec) : RealBall(prec, Blank{}) {
  int t = mpfr_set_q(mid_, v.get_mpq_t(), MPFR_RNDN);
  add_rounding_error(t);
}

RealBall::RealBall(const RealBall& o) {
  mpfr_init2(mid_, mpfr_get_prec(o.mid_));
  mpfr_init2(rad_, kRadPrec);
  mpfr_set(mid_, o.mid_, MPFR_RNDN);
  mpfr_set(rad_, o.rad_, MPFR_RNDU);
}

RealBall::RealBall(RealBall&& o) noexcept : RealBall(2L, Blank{}) {
  mpfr_swap(mid_, o.mid_);
  mpfr_swap(rad_, o.rad_);
}

RealBall& RealBall::operator=(const RealBall& o) {
  if (this != &o) {
    mpfr_set_prec(mid_, mpfr_get_prec(o.mid_));
    mpfr_set(mid_, o.mid_, MPFR_RNDN);
    mpfr_set(rad_, o.rad_, MPFR_RNDU);
  }
  return *this;
}

RealBall& RealBall::operator=(RealBall&& o) noexcept {
  mpfr_swap(mid_, o.mid_);
  mpfr_swap(rad_, o.rad_);
  return *this;
}

RealBall::~RealBall() {
  mpfr_clear(mid_);
  mpfr_clear(rad_);
}

void RealBall::add_rounding_error(int ternary) {
  if (ternary == 0 || mpfr_zero_p(mid_)) return;
  Tmp ulp(kRadPrec);
  mpfr_set_ui_2exp(ulp.v, 1, mpfr_get_exp(mid_) - mpfr_get_prec(mid_), MPFR_RNDU);
  mpfr_add(rad_, rad_, ulp.v, MPFR_RNDU);
}

RealBall RealBall::from_interval(const BigRat& lo, const BigRat& hi, long prec) {
  if (hi < lo) throw std::invalid_argument("from_interval: empty interval");
  RealBall r(prec, Blank{});
  BigRat mid = (lo + hi) / 2;
  mpfr_set_q(r.mid_, mid.get_mpq_t(), MPFR_RNDN);
  BigRat m = to_rat(r.mid_);
  BigRat rad = hi - m;
  BigRat other = m - lo;
  if (other > rad) rad = other;
  mpfr_set_q(r.rad_, rad.get_mpq_t(), MPFR_RNDU);
  return r;
}

RealBall RealBall::from_endpoints(mpfr_srcptr lo, mpfr_srcptr hi, long prec) {
  RealBall r(prec, Blank{});
  mpfr_add(r.mid_, lo, hi, MPFR_RNDN);
  mpfr_div_2ui(r.mid_, r.mid_, 1, MPFR_RNDN);
  Tmp a(kRadPrec), b(kRadPrec);
  mpfr_sub(a.v, hi, r.mid_, MPFR_RNDU);
  mpfr_sub(b.v, r.mid_, lo, MPFR_RNDU);
  mpfr_max(r.rad_, a.v, b.v, MPFR_RNDU);
  if (mpfr_sgn(r.rad_) < 0) mpfr_set_zero(r.rad_, 1);
  return r;
}

long RealBall::precision() const { return mpfr_get_prec(mid_); }
BigRat RealBall::midpoint() const { return to_rat(mid_); }
BigRat RealBall::radius() const { return to_rat(rad_); }
BigRat RealBall::lower() const { return to_rat(mid_) - to_rat(rad_); }
BigRat RealBall::upper() const { return to_rat(mid_) + to_rat(rad_); }
double RealBall::to_double() const { return mpfr_get_d(mid_, MPFR_RNDN); }
double RealBall::radius_double() const { return mpfr_get_d(rad_, MPFR_RNDU); }
bool RealBall::is_exact() const { return mpfr_zero_p(rad_) != 0; }

bool RealBall::contains(const BigRat& v) const { return lower() <= v && v <= upper(); }

bool RealBall::contains(const RealBall& o) const {
  return lower() <= o.lower() && o.upper() <= upper();
}

bool RealBall::overlaps(const RealBall& o) const {
  return !(upper() < o.lower() || o.upper() < lower());
}

bool RealBall::is_positive() const {
  return mpfr_sgn(mid_) > 0 && mpfr_cmpabs(mid_, rad_) > 0;
}

bool RealBall::is_negative() const {
  return mpfr_sgn(mid_) < 0 && mpfr_cmpabs(mid_, rad_) > 0;
}

bool RealBall::contains_zero() const { return mpfr_cmpabs(mid_, rad_) <= 0; }

std::optional<BigInt> RealBall::floor() const {
  BigInt lo = floor_of(lower());
  if (lo != floor_of(upper())) return std::nullopt;
  return lo;
}

std::optional<BigInt> RealBall::round_nearest() const {
  BigRat half(1, 2);
  BigInt lo = floor_of(lower() + half);
  if (lo != floor_of(upper() + half)) return std::nullopt;
  return lo;
}

RealBall RealBall::distance_to_integer() const {
  BigRat m = midpoint();
  BigRat n(floor_of(m + BigRat(1, 2)));
  BigRat d = abs(m - n);
  BigRat r = radius();
  BigRat lo = d - r, hi = d + r;
  if (lo < 0) lo = 0;
  if (hi > BigRat(1, 2)) hi = BigRat(1, 2);
  if (hi < lo) hi = lo;
  return from_interval(lo, hi, precision());
}

std::string RealBall::to_string(int digits) const {
  if (digits < 1) digits = 1;
  std::vector<char> buf(static_cast<size_t>(digits) + 64);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Re", digits - 1, mid_);
  std::string out = buf.data();
  if (mpfr_zero_p(rad_)) return out + " ± 0";
  char rbuf[64];
  mpfr_snprintf(rbuf, sizeof rbuf, "%.3RUe", rad_);
  return out + " ± " + rbuf;
}

RealBall RealBall::operator-() const {
  RealBall r(*this);
  mpfr_neg(r.mid_, r.mid_, MPFR_RNDN);
  return r;
}

RealBall operator+(const RealBall& a, const RealBall& b) {
  RealBall r(std::max(a.precision(), b.precision()), RealBall::Blank{});
  int t = mpfr_add(r.mid_, a.mid_, b.mid_, MPFR_RNDN);
  mpfr_add(r.rad_, a.rad_, b.rad_, MPFR_RNDU);
  r.add_rounding_error(t);
  return r;
}

RealBall operator-(const RealBall& a, const RealBall& b) {
  RealBall r(std::max(a.precision(), b.precision()), RealBall::Blank{});
  int t = mpfr_sub(r.mid_, a.mid_, b.mid_, MPFR_RNDN);
  mpfr_add(r.rad_, a.rad_, b.rad_, MPFR_RNDU);
  r.add_rounding_error(t);
  return r;
}

RealBall operator*(const RealBall& a, const RealBall& b) {
  RealBall r(std::max(a.precision(), b.precision()), RealBall::Blank{});
  int t = mpfr_mul(r.mid_, a.mid_, b.mid_, MPFR_RNDN);
  Tmp x(kRadPrec);
  mpfr_mul(x.v, a.mid_, b.rad_, MPFR_RNDA);
  mpfr_abs(x.v, x.v, MPFR_RNDU);
  mpfr_add(r.rad_, r.rad_, x.v, MPFR_RNDU);
  mpfr_mul(x.v, b.mid_, a.rad_, MPFR_RNDA);
  mpfr_abs(x.v, x.v, MPFR_RNDU);
  mpfr_add(r.rad_, r.rad_, x.v, MPFR_RNDU);
  mpfr_mul(x.v, a.rad_, b.rad_, MPFR_RNDU);
  mpfr_add(r.rad_, r.rad_, x.v, MPFR_RNDU);
  r.add_rounding_error(t);
  return r;
}

RealBall operator/(const RealBall& a, const RealBall& b) {
  if (b.contains_zero()) throw DivisionByZero("division by a ball containing zero");
  RealBall r(std::max(a.precision(), b.precision()), RealBall::Blank{});
  int t = mpfr_div(r.mid_, a.mid_, b.mid_, MPFR_RNDN);
  // |a/b - am/bm| <= (ra + |am/bm| rb) / (|bm| - rb)
  Tmp q(kRadPrec), num(kRadPrec), den(kRadPrec), bm(mpfr_get_prec(b.mid_));
  mpfr_abs(q.v, r.mid_, MPFR_RNDU);
  if (!mpfr_zero_p(r.mid_)) {
    Tmp ulp(kRadPrec);
    mpfr_set_ui_2exp(ulp.v, 1, mpfr_get_exp(r.mid_) - mpfr_get_prec(r.mid_), MPFR_RNDU);
    mpfr_add(q.v, q.v, ulp.v, MPFR_RNDU);
  }
  mpfr_mul(num.v, q.v, b.rad_, MPFR_RNDU);
  mpfr_add(num.v, num.v, a.rad_, MPFR_RNDU);
  mpfr_abs(bm.v, b.mid_, MPFR_RNDN);
  mpfr_sub(den.v, bm.v, b.rad_, MPFR_RNDD);
  if (mpfr_sgn(den.v) <= 0) throw DivisionByZero("division by a ball containing zero");
  mpfr_div(r.rad_, num.v, den.v, MPFR_RNDU);
  r.add_rounding_error(t);
  return r;
}

RealBall abs(const RealBall& x) {
  if (!x.is_negative() && !x.contains_zero()) return x;
  if (x.is_negative()) return -x;
  BigRat lo = x.lower(), hi = x.upper();
  BigRat m = -lo > hi ? BigRat(-lo) : hi;
  return RealBall::from_interval(BigRat(0), m, x.precision());
}

RealBall sqrt(const RealBall& x) {
  long p = x.precision();
  Tmp lo(p + 2), hi(p + 2);
  mpfr_sub(lo.v, x.mid_, x.rad_, MPFR_RNDD);
  mpfr_add(hi.v, x.mid_, x.rad_, MPFR_RNDU);
  if (mpfr_sgn(lo.v) < 0) throw NonPositiveInput("sqrt of a ball with negative part");
  mpfr_sqrt(lo.v, lo.v, MPFR_RNDD);
  mpfr_sqrt(hi.v, hi.v, MPFR_RNDU);
  return RealBall::from_endpoints(lo.v, hi.v, p);
}

RealBall log(const RealBall& x) {
  if (!x.is_positive()) throw NonPositiveInput("log of a ball that is not strictly positive");
  long p = x.precision();
  Tmp lo(p + 2), hi(p + 2);
  mpfr_sub(lo.v, x.mid_, x.rad_, MPFR_RNDD);
  mpfr_add(hi.v, x.mid_, x.rad_, MPFR_RNDU);
  if (mpfr_sgn(lo.v) <= 0) throw NonPositiveInput("log of a ball that is not strictly positive");
  mpfr_log(lo.v, lo.v, MPFR_RNDD);
  mpfr_log(hi.v, hi.v, MPFR_RNDU);
  return RealBall::from_endpoints(lo.v, hi.v, p);
}

RealBall exp(const RealBall& x) {
  long p = x.precision();
  Tmp lo(p + 2), hi(p + 2);
  mpfr_sub(lo.v, x.mid_, x.rad_, MPFR_RNDD);
  mpfr_add(hi.v, x.mid_, x.rad_, MPFR_RNDU);
  mpfr_exp(lo.v, lo.v, MPFR_RNDD);
  mpfr_exp(hi.v, hi.v, MPFR_RNDU);
  return RealBall::from_endpoints(lo.v, hi.v, p);
}

RealBall max(const RealBall& a, const RealBall& b) {
  if (a.lower() >= b.upper()) return a;
  if (b.lower() >= a.upper()) return b;
  BigRat lo = std::max(a.lower(), b.lower());
  BigRat hi = std::max(a.upper(), b.upper());
  return RealBall::from_interval(lo, hi, std::max(a.precision(), b.precision()));
}

RealBall min(const RealBall& a, const RealBall& b) { return -max(-a, -b); }

RealBall pow(const RealBall& x, unsigned long n) {
  RealBall result(1L, x.precision());
  RealBall base = x;
  while (n) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return result;
}

Ordering ball_compare(const RealBall& x, const RealBall& y) {
  if (x.upper() < y.lower()) return Ordering::Less;
  if (y.upper() < x.lower()) return Ordering::Greater;
  return Ordering::Undecided;
}

// ---------------------------------------------------------- QuadraticValue

QuadraticValue::QuadraticValue() : a_(0), b_(0), D_(1) {}

QuadraticValue::QuadraticValue(const BigRat& a) : a_(a), b_(0), D_(1) { a_.canonicalize(); }

QuadraticValue::QuadraticValue(const BigRat& a, const BigRat& b, const BigInt& D)
    : a_(a), b_(b), D_(D) {
  a_.canonicalize();
  b_.canonicalize();
  if (D < 0) throw std::invalid_argument("QuadraticValue: negative radicand");
  if (D == 0 || b_ == 0) {
    b_ = 0;
    D_ = 1;
    return;
  }
  SquarefreeDecomposition sf = squarefree_kernel(D);
  b_ *= BigRat(sf.y);
  D_ = sf.d;
  if (D_ == 1) {
    a_ += b_;
    b_ = 0;
  }
}

namespace {

BigInt common_radicand(const QuadraticValue& x, const QuadraticValue& y) {
  if (x.is_rational()) return y.D();
  if (y.is_rational() || x.D() == y.D()) return x.D();
  throw std::invalid_argument("QuadraticValue: mixed radicands " + to_decimal(x.D()) +
                              " and " + to_decimal(y.D()));
}

}  // namespace

int QuadraticValue::sign() const {
  int sa = sgn(a_), sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  BigRat lhs = a_ * a_, rhs = b_ * b_ * BigRat(D_);
  if (lhs == rhs) return 0;
  return lhs > rhs ? sa : sb;
}

QuadraticValue QuadraticValue::conj() const {
  QuadraticValue r(*this);
  r.b_ = -r.b_;
  return r;
}

BigRat QuadraticValue::norm() const { return a_ * a_ - b_ * b_ * BigRat(D_); }

BigRat QuadraticValue::trace() const { return 2 * a_; }

QuadraticValue QuadraticValue::inverse() const {
  BigRat n = norm();
  if (n == 0) throw DivisionByZero("inverse of zero");
  QuadraticValue r = conj();
  r.a_ /= n;
  r.b_ /= n;
  return r;
}

QuadraticValue QuadraticValue::pow(long n) const {
  if (n < 0) return inverse().pow(-n);
  QuadraticValue result(BigRat(1));
  QuadraticValue base = *this;
  unsigned long e = static_cast<unsigned long>(n);
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

std::string QuadraticValue::to_string() const {
  if (is_rational()) return to_decimal(a_);
  return to_decimal(a_) + " + " + to_decimal(b_) + "*sqrt(" + to_decimal(D_) + ")";
}

QuadraticValue QuadraticValue::operator-() const {
  QuadraticValue r(*this);
  r.a_ = -r.a_;
  r.b_ = -r.b_;
  return r;
}

QuadraticValue operator+(const QuadraticValue& x, const QuadraticValue& y) {
  QuadraticValue r;
  r.D_ = common_radicand(x, y);
  r.a_ = x.a_ + y.a_;
  r.b_ = x.b_ + y.b_;
  if (r.b_ == 0) r.D_ = 1;
  return r;
}

QuadraticValue operator-(const QuadraticValue& x, const QuadraticValue& y) { return x + (-y); }

QuadraticValue operator*(const QuadraticValue& x, const QuadraticValue& y) {
  QuadraticValue r;
  r.D_ = common_radicand(x, y);
  r.a_ = x.a_ * y.a_ + x.b_ * y.b_ * BigRat(r.D_);
  r.b_ = x.a_ * y.b_ + x.b_ * y.a_;
  if (r.b_ == 0) r.D_ = 1;
  return r;
}

QuadraticValue operator/(const QuadraticValue& x, const QuadraticValue& y) {
  return x * y.inverse();
}

bool operator==(const QuadraticValue& x, const QuadraticValue& y) {
  return x.a_ == y.a_ && x.b_ == y.b_ && x.D_ == y.D_;
}

int compare(const QuadraticValue& x, const QuadraticValue& y) { return (x - y).sign(); }

RealBall eval(const QuadraticValue& q, long prec) {
  if (prec < 2) throw std::invalid_argument("eval: precision must be at least 2 bits");
  if (q.is_rational()) return RealBall(q.a(), prec);
  long p = prec + 16;
  RealBall surd = sqrt(RealBall(q.D(), p));
  RealBall bs = RealBall(q.b(), p) * surd;
  if (sgn(q.a()) * sgn(q.b()) >= 0) return RealBall(q.a(), p) + bs;
  // Opposite signs: avoid cancellation through the conjugate.
  return RealBall(q.norm(), p) / (RealBall(q.a(), p) - bs);
}

RealBall log_ball(const RealBall& x, long prec) {
  if (!x.is_positive()) throw NonPositiveInput("log of a ball that is not strictly positive");
  RealBall y = x;
  if (y.precision() < prec) {
    RealBall widened(BigRat(0), prec);
    y = y + widened;
  }
  return log(y);
}

RealBall log_ball(const QuadraticValue& q, long prec) {
  if (q.sign() <= 0) throw NonPositiveInput("log of a non-positive quadratic value");
  if (q.is_rational() && q.a() == 1) return RealBall(0L, prec);
  return log(eval(q, prec + 16));
}

RealOracle constant_oracle(const BigRat& v) {
  return RealOracle{[v](long prec) { return RealBall(v, prec); }, v};
}

RealOracle quadratic_oracle(const QuadraticValue& q) {
  RealOracle o{[q](long prec) { return eval(q, prec); }, std::nullopt};
  if (q.is_rational()) o.exact = q.a();
  return o;
}

RealOracle log_oracle(const QuadraticValue& q) {
  if (q.sign() <= 0) throw NonPositiveInput("log of a non-positive quadratic value");
  RealOracle o{[q](long prec) { return log_ball(q, prec); }, std::nullopt};
  if (q.is_rational() && q.a() == 1) o.exact = BigRat(0);
  return o;
}

}  // namespace pellbaker
