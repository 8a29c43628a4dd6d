#include "pellbaker/bounds.hpp"

#include <stdexcept>

namespace pellbaker {

RealBall matveev_constant(int t, int D, const std::vector<RealBall>& A, long prec) {
  if (t < 1 || D < 1) throw std::invalid_argument("matveev: t and D must be positive");
  if (A.size() != static_cast<std::size_t>(t)) {
    throw std::invalid_argument("matveev: expected one A_i per logarithm");
  }
  RealBall tb(static_cast<long>(t), prec), Db(static_cast<long>(D), prec);
  RealBall c = RealBall(BigRat(7, 5), prec) * pow(RealBall(30L, prec), static_cast<unsigned long>(t + 3));
  c = c * pow(tb, 4) * sqrt(tb);
  c = c * Db * Db * (RealBall(1L, prec) + log(Db));
  for (const auto& a : A) c = c * a;
  return c;
}

RealBall matveev_lower_bound(const MatveevInstance& inst, long prec) {
  const BigRat floor016(4, 25);
  for (const auto& a : inst.A) {
    if (a.upper() < floor016) throw std::invalid_argument("matveev: A_i must be >= 0.16");
  }
  if (inst.B.lower() < 1) throw std::invalid_argument("matveev: B must be >= 1");
  RealBall c = matveev_constant(inst.t, inst.D, inst.A, prec);
  return -(c * (RealBall(1L, prec) + log(inst.B)));
}

RealBall lmn_constant(int D, const RealBall& log_B1, const RealBall& log_B2, long prec) {
  if (D < 1) throw std::invalid_argument("lmn: D must be positive");
  RealBall Db(static_cast<long>(D), prec);
  return RealBall(BigRat(2434, 100), prec) * pow(Db, 4) * log_B1 * log_B2;
}

RealBall lmn_lower_bound(const LMNInstance& inst, long prec) {
  RealBall inv_d = RealBall(1L, prec) / RealBall(static_cast<long>(inst.D), prec);
  if (inst.log_B1.lower() < inv_d.upper() && !(inst.log_B1.contains(inv_d.midpoint()) && inv_d.is_exact())) {
    if (inst.log_B1.upper() < inv_d.lower()) throw std::invalid_argument("lmn: log B1 must be >= 1/D");
  }
  if (inst.log_B2.upper() < inv_d.lower()) throw std::invalid_argument("lmn: log B2 must be >= 1/D");
  RealBall m = log(inst.b_prime) + RealBall(BigRat(14, 100), prec);
  m = max(m, RealBall(BigRat(21, inst.D), prec));
  m = max(m, RealBall(BigRat(1, 2), prec));
  return -(lmn_constant(inst.D, inst.log_B1, inst.log_B2, prec) * m * m);
}

RealBall growth_rhs(const RealBall& A, const std::vector<GrowthFactor>& factors,
                    const RealBall& x, long prec) {
  RealBall r = A;
  for (const auto& f : factors) {
    RealBall inner = RealBall(f.b, prec) * pow(x, f.c);
    RealBall term = RealBall(1L, prec) + log(inner);
    r = r * pow(term, f.k);
  }
  return r;
}

namespace {

// X <= rhs(X), certified; escalates precision while undecided.
bool satisfies(const RealBall& A, const std::vector<GrowthFactor>& f, const BigRat& x) {
  return escalate(kDefaultPrecision, [&](long prec) -> std::optional<bool> {
    RealBall rhs = growth_rhs(A, f, RealBall(x, prec), prec);
    if (rhs.lower() >= x) return true;
    if (rhs.upper() < x) return false;
    return std::nullopt;
  });
}

// sum k c / (1 + log(b x^c)) < 1 makes X / rhs(X) increasing on [x, oo).
bool ratio_decreasing_beyond(const std::vector<GrowthFactor>& f, const BigRat& x) {
  return escalate(kDefaultPrecision, [&](long prec) -> std::optional<bool> {
    RealBall s(0L, prec);
    RealBall xb(x, prec);
    for (const auto& g : f) {
      RealBall denom = RealBall(1L, prec) + log(RealBall(g.b, prec) * pow(xb, g.c));
      if (!denom.is_positive()) return false;
      s = s + RealBall(static_cast<long>(g.k * g.c), prec) / denom;
    }
    if (s.upper() < 1) return true;
    if (s.lower() >= 1) return false;
    return std::nullopt;
  });
}

}  // namespace

GrowthSolution solve_growth_inequality(const RealBall& A, const std::vector<GrowthFactor>& factors,
                                       unsigned max_steps) {
  if (!A.is_positive()) throw std::invalid_argument("solve_growth_inequality: A must be positive");
  const long prec = 256;
  const BigRat tol(1, 1000);
  BigRat x = A.midpoint();
  GrowthSolution sol;
  for (;;) {
    if (sol.iterations >= max_steps) {
      throw Divergence("growth fixpoint did not contract within " + std::to_string(max_steps) +
                       " steps");
    }
    ++sol.iterations;
    BigRat next = growth_rhs(A, factors, RealBall(x, prec), prec).midpoint();
    BigRat diff = abs(next - x);
    x = next;
    if (diff < tol * x) break;
  }
  BigInt X = floor_of(x);
  if (X < 1) X = 1;
  // Iterates approach the fixpoint from below; repair any overshoot from rounding.
  for (int guard = 0; !satisfies(A, factors, BigRat(X)); ++guard) {
    if (guard > 64) throw Divergence("growth fixpoint could not be certified");
    X = floor_of(growth_rhs(A, factors, RealBall(X, prec), prec).lower());
  }
  BigRat probe = BigRat(101, 100) * BigRat(X);
  if (satisfies(A, factors, probe) || !ratio_decreasing_beyond(factors, probe)) {
    throw Divergence("1.01 X* does not violate the growth inequality");
  }
  sol.value = X;
  sol.ceiling = ceil_of(probe);
  return sol;
}

const char* scenario_name(Scenario s) {
  switch (s) {
    case Scenario::SmallL4: return "l4-le-100";
    case Scenario::LargeL4LargeM3: return "l4-gt-100-m3-gt-100";
    case Scenario::LargeL4SmallM3: return "l4-gt-100-m3-le-100";
  }
  return "?";
}

Scenario scenario_from_name(const std::string& name) {
  for (Scenario s : {Scenario::SmallL4, Scenario::LargeL4LargeM3, Scenario::LargeL4SmallM3}) {
    if (name == scenario_name(s)) return s;
  }
  throw std::invalid_argument("unknown scenario: " + name +
                              " (expected l4-le-100, l4-gt-100-m3-gt-100, l4-gt-100-m3-le-100)");
}

void BoundSlots::tighten(const std::string& name, const BigInt& ceiling) {
  auto it = slots_.find(name);
  if (it == slots_.end()) {
    slots_.emplace(name, ceiling);
  } else if (ceiling < it->second) {
    it->second = ceiling;
  }
}

}  // namespace pellbaker
