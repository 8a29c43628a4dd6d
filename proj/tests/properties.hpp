#pragma once

// Randomised property sweeps shared by the unit tests and the acceptance runner.

#include <algorithm>
#include <functional>
#include <sstream>

#include "oracle.hpp"
#include "pellbaker/expr.hpp"
#include "pellbaker/factor.hpp"
#include "pellbaker/pelleq.hpp"
#include "pellbaker/reduce.hpp"

namespace props {

using namespace pellbaker;

struct Outcome {
  long checked = 0;
  long violations = 0;
  std::string first;  // description of the first violation

  void fail(const std::string& what) {
    if (violations++ == 0) first = what;
  }
  bool ok() const { return violations == 0 && checked > 0; }
};

// x_n^2 - d y_n^2 = eps^n for squarefree d in [2, dmax], n <= nmax.
inline Outcome pell_identity(long dmax, std::size_t nmax) {
  Outcome out;
  for (long d = 2; d <= dmax; ++d) {
    if (!is_squarefree(d)) continue;
    auto fs = fundamental_solution(d);
    XSequence seq(fs);
    for (std::size_t n = 1; n <= nmax; ++n) {
      int rhs = (fs.epsilon == -1 && n % 2 == 1) ? -1 : 1;
      ++out.checked;
      if (seq.x(n) * seq.x(n) - BigInt(d) * seq.y(n) * seq.y(n) != rhs)
        out.fail("d = " + std::to_string(d) + ", n = " + std::to_string(n));
    }
  }
  return out;
}

// p_{k+1} q_k - p_k q_{k+1} = (-1)^k at every certified depth.
inline Outcome convergent_identity(const std::vector<std::string>& exprs, std::size_t depth) {
  Outcome out;
  for (const auto& e : exprs) {
    auto cf = cf_expand(parse_real_expr(e), depth);
    for (std::size_t k = 0; k + 1 < cf.depth(); ++k) {
      ++out.checked;
      BigInt lhs = cf.p(k + 1) * cf.q(k) - cf.p(k) * cf.q(k + 1);
      if (lhs != (k % 2 == 0 ? 1 : -1)) out.fail(e + " at k = " + std::to_string(k));
    }
  }
  return out;
}

// A real number as a library oracle and as a series reference value.
struct Real {
  RealOracle oracle;
  BigRat ref;
};

inline const unsigned kRefBits = 320;

inline Real sqrt_real(long r) {
  return {parse_real_expr("sqrt(" + std::to_string(r) + ")"), oracle::sqrt_rat(r, kRefBits)};
}

inline Real log_real(long a) {
  return {parse_real_expr("log(" + std::to_string(a) + ")"), oracle::log_rat(BigRat(a), kRefBits)};
}

inline Real log_ratio(long a, long b) {
  return {parse_real_expr("log(" + std::to_string(a) + ")/log(" + std::to_string(b) + ")"),
          oracle::log_rat(BigRat(a), kRefBits + 32) / oracle::log_rat(BigRat(b), kRefBits + 32)};
}

inline Real log4_over_logalpha() {
  return {parse_real_expr("log4/logalpha"),
          oracle::log_rat(BigRat(4), kRefBits + 32) / oracle::log_alpha(kRefBits + 32)};
}

struct DPInstance {
  Real tau, mu;
  long A;
  Real B;
  long M;
};

// Two fixed instances followed by random ones, all with M <= 10^4.
inline std::vector<DPInstance> dp_instances(std::size_t count) {
  Real alpha2{parse_real_expr("3+2*sqrt(2)"), 3 + 2 * oracle::sqrt_rat(2, kRefBits)};
  Real two{parse_real_expr("2"), 2}, three{parse_real_expr("3"), 3};
  std::vector<DPInstance> out = {
      {log4_over_logalpha(), {parse_real_expr("1/2"), BigRat(1, 2)}, 120, alpha2, 1000},
      {sqrt_real(2), {parse_real_expr("1/3"), BigRat(1, 3)}, 10, two, 50},
  };
  const std::vector<long> radicands = {3, 5, 6, 7, 10, 11, 13, 14, 15, 17};
  const std::vector<long> primes = {2, 3, 5, 7, 11, 13};
  while (out.size() < count) {
    Real t = oracle::uniform(0, 1) ? sqrt_real(radicands[oracle::uniform(0, 9)])
                                   : log_ratio(primes[oracle::uniform(0, 2)], primes[oracle::uniform(3, 5)]);
    Real mu = oracle::uniform(0, 1) ? log_real(primes[oracle::uniform(0, 5)])
                                    : log_ratio(primes[oracle::uniform(3, 5)], primes[oracle::uniform(0, 2)]);
    Real B = oracle::uniform(0, 2) == 0 ? alpha2 : (oracle::uniform(0, 1) ? two : three);
    out.push_back({t, mu, oracle::uniform(1, 500), B, oracle::uniform(10, 10000)});
  }
  return out;
}

// Every u <= M keeps |u tau - v + mu| >= A B^-(w_max + 1).
inline Outcome dp_soundness(std::size_t count) {
  Outcome out;
  for (const auto& in : dp_instances(count)) {
    DPQuery q{in.tau.oracle, in.mu.oracle, constant_oracle(BigRat(in.A)), in.B.oracle, in.M};
    DPResult r = dp_reduce(q);
    RealBall thresh = RealBall(in.A, 256) / pow(RealBall(in.B.ref, 256), r.w_max.get_ui() + 1);
    BigRat t = thresh.upper();
    for (long u = 1; u <= in.M; ++u) {
      BigRat x = in.tau.ref * u + in.mu.ref;
      BigRat g = x - BigRat(floor_of(x + BigRat(1, 2)));
      if (g < 0) g = -g;
      ++out.checked;
      if (g != 0 && g < t) {
        out.fail("u = " + std::to_string(u) + ", M = " + std::to_string(in.M) + ", w_max = " + r.w_max.get_str());
        break;
      }
    }
  }
  return out;
}

// Random forms in logs of distinct primes, t in {2, 3}, X_i <= 12: the
// certified lower bound never exceeds the exhaustive minimum. ConditionFailed
// is answered with a larger C, as the lemma prescribes.
inline Outcome lll_soundness(std::size_t count) {
  const std::vector<long> primes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29};
  const unsigned bits = 200;
  Outcome out;
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t t = oracle::uniform(0, 3) == 0 ? 2 : 3;
    std::vector<long> ps = primes;
    std::shuffle(ps.begin(), ps.end(), oracle::rng());
    LLLInstance inst;
    std::vector<BigInt> T;
    std::ostringstream desc;
    for (std::size_t j = 0; j < t; ++j) {
      inst.tau.push_back(parse_real_expr("log(" + std::to_string(ps[j]) + ")"));
      inst.X.push_back(oracle::uniform(1, 12));
      T.push_back(oracle::fixed_log(BigRat(ps[j]), bits));
      desc << "log " << ps[j] << " (X " << inst.X.back() << ") ";
    }
    inst.C = default_lll_C(inst.X);
    std::optional<LLLBound> bound;
    for (int attempt = 0; attempt < 4 && !bound; ++attempt) {
      try {
        bound = lll_form_lower_bound(inst);
      } catch (const ConditionFailed&) {
        inst.C *= oracle::pow2(16);
      }
    }
    ++out.checked;
    if (!bound) {
      out.fail("no bound for " + desc.str());
      continue;
    }
    BigInt best = -1;
    std::vector<long> x(t);
    std::function<void(std::size_t)> rec = [&](std::size_t j) {
      if (j == t) {
        if (std::all_of(x.begin(), x.end(), [](long v) { return v == 0; })) return;
        BigInt s = 0;
        for (std::size_t k = 0; k < t; ++k) s += x[k] * T[k];
        s = abs(s);
        if (best < 0 || s < best) best = s;
        return;
      }
      long X = inst.X[j].get_si();
      for (x[j] = -X; x[j] <= X; ++x[j]) rec(j + 1);
    };
    rec(0);
    BigRat slack = oracle::rat(64, oracle::pow2(bits));
    if (!(bound->bound > 0) || bound->bound > oracle::rat(best, oracle::pow2(bits)) + slack)
      out.fail("bound above the minimum for " + desc.str());
  }
  return out;
}

}  // namespace props
