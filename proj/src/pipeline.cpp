#include <algorithm>
#include <chrono>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "pellbaker/driver.hpp"
#include "pellbaker/expr.hpp"
#include "pellbaker/reduce.hpp"
#include "pellbaker/sequences.hpp"

namespace pellbaker {
namespace {

const QuadraticValue& alpha() {
  static const QuadraticValue a(BigRat(1), BigRat(1), BigInt(2));
  return a;
}

std::string sci(const BigRat& v, int digits = 6) {
  return RealBall(v, 128).to_string(digits);
}

StageRecord ball_row(const std::string& stage, const LemmaRecord& r) {
  StageRecord s;
  s.stage = stage;
  s.name = r.name;
  s.computed = r.value.to_string(8);
  s.published = r.published_text;
  s.check = r.kind;
  s.tolerance = r.tolerance;
  s.verdict = judge(r.value.to_double(), r.published, r.kind, r.tolerance);
  s.note = r.note;
  return s;
}

StageRecord exact_row(const std::string& stage, const std::string& name, const std::string& computed,
                      const std::string& published, std::string note = {}) {
  StageRecord s;
  s.stage = stage;
  s.name = name;
  s.computed = computed;
  s.published = published;
  s.check = CheckKind::Exact;
  s.verdict = computed == published ? Verdict::Match : Verdict::Mismatch;
  s.note = std::move(note);
  return s;
}

StageRecord numeric_row(const std::string& stage, const std::string& name, const std::string& computed,
                        double value, double published, const std::string& published_text, CheckKind kind,
                        double tol, std::string note = {}) {
  StageRecord s;
  s.stage = stage;
  s.name = name;
  s.computed = computed;
  s.published = published_text;
  s.check = kind;
  s.tolerance = tol;
  s.verdict = judge(value, published, kind, tol);
  s.note = std::move(note);
  return s;
}

std::set<std::string> stage_set(const std::string& which) {
  if (which == "all") return {"bounds", "legendre", "lll", "search"};
  if (which == "bounds-only") return {"bounds"};
  std::set<std::string> out;
  std::istringstream in(which);
  std::string s;
  while (std::getline(in, s, ',')) {
    if (s != "bounds" && s != "legendre" && s != "lll" && s != "search") {
      throw std::invalid_argument("unknown stage '" + s + "'");
    }
    out.insert(s);
  }
  return out;
}

std::string describe_box(const SearchBox& b) {
  return "l1<=" + std::to_string(b.l1max) + " m1<=" + std::to_string(b.m1max) +
         " l2<=" + std::to_string(b.l2max) + " m2<=" + std::to_string(b.m2max) +
         " n2<=" + std::to_string(b.n2max);
}

std::string join(const std::vector<BigInt>& v, std::size_t n) {
  std::string s;
  for (std::size_t i = 0; i < std::min(n, v.size()); ++i) {
    if (i) s += ", ";
    s += to_decimal(v[i]);
  }
  return s;
}

RealOracle tau_log4_over_logalpha() { return parse_real_expr("log4/logalpha"); }

}  // namespace

BigInt exponent_cutoff(const BigRat& num, const BigRat& bound) {
  if (num <= 0 || bound <= 0) throw std::invalid_argument("exponent_cutoff: positive inputs required");
  return escalate(kDefaultPrecision, [&](long prec) -> std::optional<BigInt> {
    RealBall x = log(RealBall(BigRat(num / bound), prec)) /
                 (RealBall(2L, prec) * log_ball(alpha(), prec));
    auto f = x.floor();
    if (!f || !(x.lower() > BigRat(*f))) return std::nullopt;
    return *f;
  });
}

LLLSweepResult run_lll_sweep(int lmin, int lmax, const BigInt& X, const BigInt& C,
                             const BigInt& n2max, unsigned jobs) {
  if (lmin < 1 || lmax < lmin) throw std::invalid_argument("lll sweep: bad index range");
  const int count = lmax - lmin + 1;
  std::vector<LLLSweepEntry> entries(count);
  std::vector<std::string> errors(count);
  auto one = [&](int l) {
    LLLInstance inst;
    inst.C = C;
    inst.tau.push_back(parse_real_expr("logalpha"));
    if (l <= 2) {
      // log(sqrt2/P_l) = +-log(2)/2 is a multiple of log 4: merge the first two terms,
      // whose combined coefficient n_j +- 4 n_i stays below 5X/2.
      inst.tau.insert(inst.tau.begin(), parse_real_expr("log2/2"));
      inst.X = {BigInt(5 * X / 2), X};
    } else {
      BigInt P = term(pell_family(), static_cast<unsigned long>(l));
      QuadraticValue g(BigRat(0), make_rat(1, P), BigInt(2));
      inst.tau.insert(inst.tau.begin(),
                      {RealOracle{[g](long p) { return log_ball(g, p); }, std::nullopt},
                       parse_real_expr("log4")});
      inst.X = {X, X, X};
    }
    LLLBound b = lll_form_lower_bound(inst);
    return LLLSweepEntry{l, b.bound, static_cast<int>(inst.tau.size())};
  };
  if (jobs == 0) jobs = 1;
  auto work = [&](unsigned id) {
    for (int i = static_cast<int>(id); i < count; i += static_cast<int>(jobs)) {
      try {
        entries[i] = one(lmin + i);
      } catch (const std::exception& e) {
        errors[i] = "l = " + std::to_string(lmin + i) + ": " + e.what();
      }
    }
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned id = 0; id < jobs; ++id) pool.emplace_back(work, id);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (!e.empty()) throw ConditionFailed("lll sweep: " + e);
  }
  LLLSweepResult out;
  out.entries = std::move(entries);
  out.min_bound = out.entries.front().bound;
  out.argmin = out.entries.front().l;
  for (const auto& e : out.entries) {
    if (e.bound < out.min_bound) {
      out.min_bound = e.bound;
      out.argmin = e.l;
    }
  }
  out.cutoff = exponent_cutoff(BigRat(220 * n2max), out.min_bound);
  return out;
}

PipelineReport run_pipeline(const PipelineConfig& cfg) {
  using clock = std::chrono::steady_clock;
  PipelineReport rep;
  std::set<std::string> wanted;
  try {
    wanted = stage_set(cfg.stages);
  } catch (const std::exception& e) {
    rep.complete = false;
    rep.error = e.what();
    return rep;
  }
  const bool pell = cfg.family == "pell";
  if (!pell && cfg.family != "fibonacci") {
    rep.complete = false;
    rep.error = "reproduce supports the pell and fibonacci families, not '" + cfg.family + "'";
    return rep;
  }
  // Only the final search applies to families other than Pell.
  for (const char* s : {"bounds", "legendre", "lll", "search"}) {
    if (wanted.count(s) && (pell || std::string(s) == "search")) rep.stages.push_back(s);
  }

  std::string current;
  auto t0 = clock::now();
  auto begin = [&](const std::string& s) {
    current = s;
    t0 = clock::now();
  };
  auto end = [&] {
    if (cfg.timings) {
      rep.timings.push_back({current, std::chrono::duration<double>(clock::now() - t0).count()});
    }
  };
  auto has = [&](const char* s) {
    return std::find(rep.stages.begin(), rep.stages.end(), s) != rep.stages.end();
  };

  try {
    std::optional<BigInt> chain_ceiling;
    if (has("bounds")) {
      begin("bounds");
      std::set<std::string> seen;
      BigInt top = 0;
      for (Scenario sc : {Scenario::SmallL4, Scenario::LargeL4LargeM3, Scenario::LargeL4SmallM3}) {
        ScenarioBounds sb = lemma_chain(sc);
        for (const auto& r : sb.records) {
          if (seen.insert(r.name).second) rep.records.push_back(ball_row("bounds", r));
        }
        if (sb.ceiling > top) top = sb.ceiling;
      }
      chain_ceiling = top;
      rep.records.push_back(numeric_row("bounds", "global-ceiling", to_decimal(top),
                                        RealBall(top, 128).to_double(), 3.8e85, "3.8e85",
                                        CheckKind::UpperBound, 0.05,
                                        "largest index over the three scenarios"));
      end();
    }

    if (has("legendre")) {
      begin("legendre");
      ContinuedFraction cf(tau_log4_over_logalpha());
      cf.extend(20);
      rep.records.push_back(exact_row("legendre", "cf.first-20", join(cf.quotients(), 20),
                                      "1, 1, 1, 2, 1, 13, 2, 1, 5, 4, 1, 3, 1, 8, 1, 10, 1, 1, 2, 3"));
      // alpha^(2 l3) > 480 n2^2 / log(alpha) makes r/s a convergent.
      BigInt below = escalate(kDefaultPrecision, [&](long prec) -> std::optional<BigInt> {
        RealBall la = log_ball(alpha(), prec);
        RealBall x = log(RealBall(BigRat(480 * cfg.n2max * cfg.n2max), prec) / la) /
                     (RealBall(2L, prec) * la);
        auto f = x.floor();
        if (!f || !(x.lower() > BigRat(*f))) return std::nullopt;
        return *f;
      });
      rep.records.push_back(exact_row("legendre", "convergent-threshold", to_decimal(BigInt(below + 1)), "227",
                                      "smallest l3 with alpha^(2 l3) > 480 n2^2 / log(alpha)"));
      LegendreResult lr = legendre_bound(cf, cfg.n2max);
      rep.records.push_back(numeric_row("legendre", "cf.N", std::to_string(lr.N),
                                        static_cast<double>(lr.N), 170, "170", CheckKind::UpperBound, 0,
                                        "smallest N with q_N > n2max"));
      rep.records.push_back(exact_row("legendre", "cf.a(M)", to_decimal(lr.aM), "1469"));
      BigInt l3 = legendre_apply(lr.aM, BigRat(240), cfg.n2max);
      rep.records.push_back(exact_row("legendre", "l3-bound", to_decimal(l3), "230"));
      if (chain_ceiling) {
        LegendreResult own = legendre_bound(cf, *chain_ceiling);
        BigInt l3own = legendre_apply(own.aM, BigRat(240), *chain_ceiling);
        rep.records.push_back(numeric_row("legendre", "l3-bound.own-ceiling", to_decimal(l3own),
                                          l3own.get_d(), 230, "230", CheckKind::UpperBound, 0,
                                          "with n2 below the recomputed global ceiling, a(M) = " +
                                              to_decimal(own.aM)));
      }
      end();
    }

    if (has("lll")) {
      begin("lll");
      BigInt C;
      if (cfg.lll_C) {
        C = *cfg.lll_C;
      } else {
        BigInt five_x = 5 * cfg.lll_X;
        mpz_pow_ui(C.get_mpz_t(), five_x.get_mpz_t(), 5);
      }
      LLLSweepResult sw = run_lll_sweep(cfg.lll_lmin, cfg.lll_lmax, cfg.lll_X, C, cfg.n2max, cfg.jobs);
      rep.records.push_back(numeric_row(
          "lll", "min-lower-bound", sci(sw.min_bound), RealBall(sw.min_bound, 128).to_double(), 2e-220,
          "2e-220", CheckKind::Magnitude, 0, "minimum at l = " + std::to_string(sw.argmin)));
      rep.records.push_back(numeric_row("lll", "cutoff", to_decimal(sw.cutoff), sw.cutoff.get_d(), 401,
                                        "401", CheckKind::UpperBound, 49.0 / 401.0,
                                        "min{m_i, l_j} bound; accepted up to 450"));
      end();
    }

    if (has("search")) {
      begin("search");
      SearchBox box = cfg.box;
      box.family = cfg.family;
      if (pell) {
        rep.records.push_back(exact_row("search", "final-box", describe_box(box),
                                        describe_box(final_box()), "published box, consumed as input"));
      }
      std::vector<WitnessPair> ws = find_witnesses(box, cfg.jobs);
      rep.records.push_back(exact_row("search", "witnesses", std::to_string(ws.size()), pell ? "0" : "3"));
      if (!pell) {
        std::set<BigInt> ds;
        std::set<std::pair<BigInt, BigInt>> pairs;
        for (const auto& w : ws) {
          if (w.d) ds.insert(*w.d);
          pairs.emplace(w.x_n1, w.x_n2);
        }
        rep.records.push_back(
            exact_row("search", "d-values", join(std::vector<BigInt>(ds.begin(), ds.end()), ds.size()),
                      "2, 3, 5"));
        std::string ps;
        for (const auto& [a, b] : pairs) {
          if (!ps.empty()) ps += ", ";
          ps += "(" + to_decimal(a) + "," + to_decimal(b) + ")";
        }
        rep.records.push_back(exact_row("search", "value-pairs", ps, "(1,3), (2,9), (2,26)"));
      }
      end();
    }
  } catch (const std::exception& e) {
    rep.complete = false;
    rep.error = current + ": " + e.what();
  }
  return rep;
}

}  // namespace pellbaker
