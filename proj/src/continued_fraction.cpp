#include <algorithm>
#include <stdexcept>

#include "pellbaker/reduce.hpp"

namespace pellbaker {
namespace {

// First `n` Euclid quotients of r (fewer if r is reached exactly).
std::vector<BigInt> euclid(BigRat r, std::size_t n) {
  std::vector<BigInt> out;
  while (out.size() < n) {
    BigInt a = floor_of(r);
    out.push_back(a);
    BigRat frac = r - BigRat(a);
    if (frac == 0) break;
    r = 1 / frac;
  }
  return out;
}

}  // namespace

ContinuedFraction::ContinuedFraction(RealOracle value) : value_(std::move(value)) {
  p_ = {BigInt(1)};
  q_ = {BigInt(0)};
  if (value_.exact) {
    for (const auto& a : euclid(*value_.exact, static_cast<std::size_t>(-1))) push(a);
    terminated_ = true;
  }
}

void ContinuedFraction::push(const BigInt& a) {
  // p_ and q_ carry the k = -1 entry at index 0.
  std::size_t k = a_.size();
  BigInt pm2 = k == 0 ? BigInt(0) : p_[k - 1];
  BigInt qm2 = k == 0 ? BigInt(1) : q_[k - 1];
  p_.push_back(a * p_[k] + pm2);
  q_.push_back(a * q_[k] + qm2);
  a_.push_back(a);
}

void ContinuedFraction::extend(std::size_t depth) {
  if (terminated_ || a_.size() >= depth) return;
  const long ceiling = precision_ceiling();
  for (;;) {
    RealBall v = value_(prec_);
    // Both endpoints continue past position k, so every point between them
    // lies in the open cylinder of the shared prefix.
    std::vector<BigInt> lo = euclid(v.lower(), depth + 1);
    std::vector<BigInt> hi = euclid(v.upper(), depth + 1);
    std::size_t n = std::min(lo.size(), hi.size());
    std::size_t common = 0;
    while (common < n && lo[common] == hi[common]) ++common;
    std::size_t certified = std::min(common, n - 1);
    certified = std::min(certified, depth);
    for (std::size_t i = 0; i < std::min(certified, a_.size()); ++i) {
      if (lo[i] != a_[i]) throw std::logic_error("continued fraction: certified quotient changed");
    }
    for (std::size_t i = a_.size(); i < certified; ++i) push(lo[i]);
    if (a_.size() >= depth) return;
    if (prec_ * 2 > ceiling) throw PrecisionExhausted(ceiling);
    prec_ *= 2;
  }
}

ContinuedFraction cf_expand(const RealOracle& value, std::size_t depth) {
  ContinuedFraction cf(value);
  cf.extend(depth);
  return cf;
}

const BigInt& ContinuedFraction::p(std::size_t k) const { return p_.at(k + 1); }
const BigInt& ContinuedFraction::q(std::size_t k) const { return q_.at(k + 1); }

LegendreResult legendre_bound(ContinuedFraction& cf, const BigInt& M) {
  std::size_t k = 0;
  for (;;) {
    if (k >= cf.depth()) {
      if (cf.terminated()) {
        throw std::invalid_argument("legendre_bound: rational value has no convergent beyond M");
      }
      cf.extend(std::max<std::size_t>(2 * cf.depth(), 16));
    }
    if (cf.q(k) > M) break;
    ++k;
  }
  LegendreResult r;
  r.N = k;
  r.aM = *std::max_element(cf.quotients().begin(), cf.quotients().begin() + k + 1);
  return r;
}

BigInt legendre_apply(const BigInt& aM, const BigRat& c, const BigInt& n2max) {
  if (aM < 0 || c <= 0 || n2max < 1) throw std::invalid_argument("legendre_apply: bad input");
  return escalate(kDefaultPrecision, [&](long prec) -> std::optional<BigInt> {
    RealBall la = log_ball(QuadraticValue(BigRat(1), BigRat(1), BigInt(2)), prec);
    RealBall K = RealBall(BigRat(aM + 2) * c * BigRat(n2max * n2max), prec) / la;
    RealBall x = log(K) / (RealBall(2L, prec) * la);
    // alpha^(2L) < K  <=>  L < x.
    auto f = x.floor();
    if (!f || !(x.lower() > BigRat(*f))) return std::nullopt;
    return *f;
  });
}

}  // namespace pellbaker
