#pragma once

#include <map>
#include <string>
#include <vector>

#include "pellbaker/arith.hpp"

namespace pellbaker {

class Divergence : public Error {
 public:
  using Error::Error;
};

struct MatveevInstance {
  int t = 1;
  int D = 1;
  RealBall B;
  std::vector<RealBall> A;
};

// 1.4 * 30^(t+3) * t^4.5 * D^2 * (1 + log D) * prod A_i, i.e. the bound without (1 + log B).
RealBall matveev_constant(int t, int D, const std::vector<RealBall>& A,
                          long prec = kDefaultPrecision);
// -matveev_constant(...) * (1 + log B).
RealBall matveev_lower_bound(const MatveevInstance& inst, long prec = kDefaultPrecision);

struct LMNInstance {
  int D = 1;
  RealBall b_prime;
  RealBall log_B1;
  RealBall log_B2;
};

// -24.34 D^4 (max{log b' + 0.14, 21/D, 1/2})^2 log B1 log B2.
RealBall lmn_lower_bound(const LMNInstance& inst, long prec = kDefaultPrecision);
// 24.34 D^4 log B1 log B2, the factor in front of the squared maximum.
RealBall lmn_constant(int D, const RealBall& log_B1, const RealBall& log_B2,
                      long prec = kDefaultPrecision);

// One factor (1 + log(b X^c))^k.
struct GrowthFactor {
  BigRat b;
  unsigned c = 1;
  unsigned k = 1;
};

struct GrowthSolution {
  BigInt value;       // satisfies X <= A prod(...)
  BigInt ceiling;     // ceil(1.01 value); every solution X is below it
  unsigned iterations = 0;
};

RealBall growth_rhs(const RealBall& A, const std::vector<GrowthFactor>& factors,
                    const RealBall& x, long prec = kDefaultPrecision);
// Largest X with X <= A prod (1 + log(b_i X^c_i))^k_i, up to 0.1%.
GrowthSolution solve_growth_inequality(const RealBall& A, const std::vector<GrowthFactor>& factors,
                                       unsigned max_steps = 10000);

enum class Scenario { SmallL4, LargeL4LargeM3, LargeL4SmallM3 };

const char* scenario_name(Scenario s);
Scenario scenario_from_name(const std::string& name);

// How a computed value is compared with the published one.
enum class CheckKind {
  Relative,     // |c/p - 1| <= tol
  UpperBound,   // as Relative, but a sharper (smaller) value is acceptable
  Exact,        // integer equality
  Magnitude,    // |log10(c/p)| <= 1
};

struct LemmaRecord {
  std::string name;
  RealBall value;
  double published = 0.0;
  std::string published_text;
  CheckKind kind = CheckKind::Relative;
  double tolerance = 0.01;
  std::string note;
};

// Named ceilings that can only be lowered once set.
class BoundSlots {
 public:
  void tighten(const std::string& name, const BigInt& ceiling);
  bool has(const std::string& name) const { return slots_.count(name) != 0; }
  const BigInt& get(const std::string& name) const { return slots_.at(name); }
  const std::map<std::string, BigInt>& all() const { return slots_; }

 private:
  std::map<std::string, BigInt> slots_;
};

struct ScenarioBounds {
  Scenario scenario = Scenario::SmallL4;
  BoundSlots slots;
  BigInt ceiling;  // the scenario's absolute ceiling on the largest index
  std::vector<LemmaRecord> records;
};

ScenarioBounds lemma_chain(Scenario scenario);

}  // namespace pellbaker
