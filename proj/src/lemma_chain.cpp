#include "pellbaker/bounds.hpp"

#include <stdexcept>

namespace pellbaker {
namespace {

constexpr long kPrec = 256;

struct Constants {
  RealBall one, log2, log_alpha, two_log_alpha;

  Constants() {
    one = RealBall(1L, kPrec);
    log2 = log(RealBall(2L, kPrec));
    log_alpha = log_ball(QuadraticValue(BigRat(1), BigRat(1), BigInt(2)), kPrec);
    two_log_alpha = RealBall(2L, kPrec) * log_alpha;
  }

  RealBall num(long v) const { return RealBall(v, kPrec); }
  RealBall rat(long p, long q) const { return RealBall(BigRat(p, q), kPrec); }
};

// Coefficients shared by every scenario.
struct Shared {
  RealBall c_l;      // l < c_l log(delta) (1 + log 2m)
  RealBall c_m;      // m < c_m l log(delta) (1 + log 2m)
  RealBall l3_small; // l3 bound when n2 <= 15785
  RealBall c_l3;     // l3 < c_l3 (1 + log n2)^2 when n2 > 15785
  RealBall c_m3;     // m3 < c_m3 l1 l2 (1 + log 2 m4^2)
  RealBall c_min;    // min{m_i, l_j} < c_min (1 + log 2m4)^2 (1 + log 2m4^2)
};

void add(std::vector<LemmaRecord>& out, std::string name, const RealBall& v, double published,
         std::string published_text, CheckKind kind, double tol, std::string note = {}) {
  out.push_back(LemmaRecord{std::move(name), v, published, std::move(published_text), kind, tol,
                            std::move(note)});
}

// Upper end of coef * prod (1 + log(b U^c))^k, rounded up.
BigInt ceil_at(const RealBall& coef, const std::vector<GrowthFactor>& f, const BigInt& U) {
  return ceil_of(growth_rhs(coef, f, RealBall(U, kPrec), kPrec).upper());
}

Shared shared_lemmas(const Constants& k, std::vector<LemmaRecord>& out) {
  Shared s;
  // One solution against P_l P_m: D = 4, A = (2 log delta, 4 log 2, 2 log alpha).
  RealBall K1 = matveev_constant(3, 4, {k.num(2), k.num(4) * k.log2, k.two_log_alpha}, kPrec);
  add(out, "prefactor.lambda-pell-product", K1, 5.34e13, "5.34e13", CheckKind::Relative, 0.01,
      "per unit of log(delta) (1 + log 2m)");
  // log 60 is absorbed using log(delta)(1 + log 2m) >= log(alpha)(1 + log 2).
  RealBall absorb60 = log(k.num(60)) / (k.log_alpha * (k.one + k.log2));
  s.c_l = (K1 + absorb60) / k.two_log_alpha;
  add(out, "coef.l-bound", s.c_l, 5.36e13, "5.36e13", CheckKind::UpperBound, 0.01);
  add(out, "coef.nl-bound", k.two_log_alpha * s.c_l, 5.35e13, "5.35e13", CheckKind::UpperBound,
      0.01);

  // Two logarithms in Q(sqrt 2): D = 2, log B1 = 2 log 2 (gamma = 4), log B2 = 1/2 (gamma = alpha).
  RealBall Klmn = lmn_constant(2, k.num(2) * k.log2, k.rat(1, 2), kPrec);
  add(out, "prefactor.lmn", Klmn, 270, "270", CheckKind::Relative, 0.01);
  RealBall wide = k.rat(21, 2);
  s.l3_small = (Klmn * wide * wide + log(k.num(240 * 15785))) / k.two_log_alpha;
  add(out, "bound.l3.n2-le-15785", s.l3_small, 16000, "16000", CheckKind::UpperBound, 0.01);
  // For n2 > 15785: log(2 n2) + 0.14 <= 1 + log n2 and (log 240 + log n2)/(1 + log n2)^2
  // decreases, so its value at 15785 absorbs log(240 n2).
  RealBall ln0 = log(k.num(15785));
  RealBall kappa = (log(k.num(240)) + ln0) / pow(k.one + ln0, 2);
  s.c_l3 = (Klmn + kappa) / k.two_log_alpha;
  add(out, "coef.l3.n2-gt-15785", s.c_l3, 160, "160", CheckKind::UpperBound, 0.01);

  // Single solution with A = (2 log delta, 8 l log 2, 2 log alpha). Since n < 2m, B = 2m.
  RealBall K2 = matveev_constant(3, 4, {k.num(2), k.num(8) * k.log2, k.two_log_alpha}, kPrec);
  add(out, "prefactor.lambda-single", K2, 7.58e13, "7.58e13", CheckKind::Relative, 0.01,
      "per unit of l log(delta) (1 + log 2m); the product of the listed A_i gives this value");
  RealBall absorb50 = log(k.num(50)) / (k.log_alpha * (k.one + k.log2));
  s.c_m = (K2 + absorb50) / k.two_log_alpha;
  add(out, "coef.m-bound", s.c_m, 4.30e13, "4.30e13", CheckKind::UpperBound, 0.01);

  // Eliminating log(delta) between the two solutions: D = 2, A = (4 l1 log 2, 4 l2 log 2, log alpha).
  RealBall K3 = matveev_constant(3, 2, {k.num(4) * k.log2, k.num(4) * k.log2, k.log_alpha}, kPrec);
  add(out, "prefactor.lambda-two-solutions", K3, 6.57e12, "6.57e12", CheckKind::Relative, 0.01,
      "per unit of l1 l2 (1 + log 2 m4^2)");
  // log(400 n2) < log 400 + log(2 m4^2) <= 6 (1 + log 2 m4^2).
  s.c_m3 = (K3 + k.num(6)) / k.two_log_alpha;
  add(out, "coef.m3", s.c_m3, 6.6e12, "6.6e12", CheckKind::UpperBound, 0.01);

  // Mixed form with gamma = (sqrt2/P_li, 2, alpha): A = (4 l_i log 2, 2 log 2, log alpha).
  RealBall K4 = matveev_constant(3, 2, {k.num(4) * k.log2, k.num(2) * k.log2, k.log_alpha}, kPrec);
  add(out, "prefactor.lambda-mixed", K4, 3.30e12, "3.30e12", CheckKind::Relative, 0.01,
      "per unit of l_i (1 + log 2 m4^2); A3 = log alpha, the height bound");
  // l_i < c_l3 (1 + log 2m4)^2; log(440 n2) < log(880 m4) is absorbed by the +1 for m4 > 10^4.
  s.c_min = (K4 * s.c_l3 + k.one) / k.two_log_alpha;
  add(out, "coef.min-index", s.c_min, 3e15, "3e15", CheckKind::UpperBound, 0.01);

  // The n2 <= 15785 branch must be dominated by the large-n2 formula once m4 > 10^4.
  RealBall at = s.c_l3 * pow(k.one + log(k.num(20000)), 2);
  if (!(at.lower() > s.l3_small.upper())) {
    throw std::logic_error("lemma chain: small-n2 l3 bound not dominated at m4 = 10^4");
  }
  return s;
}

ScenarioBounds small_l4(const Constants& k, const Shared& s, ScenarioBounds sb) {
  // l1, l2 <= 100.
  RealBall m3 = s.c_m3 * k.num(10000);
  add(sb.records, "small-l4.m3-coef", m3, 6.6e16, "6.6e16", CheckKind::UpperBound, 0.01,
      "per unit of (1 + log 2 m4^2)");
  RealBall ld = k.two_log_alpha * m3;
  add(sb.records, "small-l4.log-delta-coef", ld, 6.6e16, "6.6e16", CheckKind::UpperBound, 0.01);
  // m4 < c_m l4 log(delta) (1 + log 2m4) with l4 <= 100.
  RealBall A = s.c_m * k.num(100) * ld;
  add(sb.records, "small-l4.growth-A", A, 4e30, "4e30", CheckKind::UpperBound, 0.01,
      "obtained through the single-solution bound; substituting the l-bound coefficient for n2 "
      "does not follow from the preceding inequalities");
  std::vector<GrowthFactor> f = {{BigRat(2), 1, 1}, {BigRat(2), 2, 1}};
  GrowthSolution g = solve_growth_inequality(A, f);
  add(sb.records, "small-l4.m4", RealBall(g.value, kPrec), 5.3e34, "5.3e34", CheckKind::UpperBound,
      0.05);
  sb.slots.tighten("m4", g.ceiling);
  sb.slots.tighten("n2", 2 * g.ceiling);
  sb.slots.tighten("l4", 100);
  sb.slots.tighten("l3", 100);
  sb.slots.tighten("m3", ceil_at(m3, {{BigRat(2), 2, 1}}, g.ceiling));
  sb.slots.tighten("log_delta", ceil_at(ld, {{BigRat(2), 2, 1}}, g.ceiling));
  sb.ceiling = sb.slots.get("n2");
  add(sb.records, "small-l4.ceiling", RealBall(sb.ceiling, kPrec), 1.1e35, "1.1e35",
      CheckKind::UpperBound, 0.05, "max{n2, m4} < 2 m4");
  return sb;
}

ScenarioBounds large_m3(const Constants& k, const Shared& s, ScenarioBounds sb) {
  // Case min{m_i, l_j} = l_j: l4 bounded by c_min, l3 by c_l3, then m3, log(delta), m4.
  RealBall m3 = s.c_m3 * s.c_l3 * s.c_min;
  add(sb.records, "large-m3.case-l.m3-coef", m3, 3.2e30, "3.2e30", CheckKind::UpperBound, 0.01,
      "per unit of (1 + log 2m4)^4 (1 + log 2m4^2)^2");
  RealBall ld = k.two_log_alpha * m3;
  add(sb.records, "large-m3.case-l.log-delta-coef", ld, 3.2e30, "3.2e30", CheckKind::UpperBound,
      0.01);
  RealBall Aa = s.c_m * s.c_min * ld;
  add(sb.records, "large-m3.case-l.growth-A", Aa, 4.1e59, "4.1e59", CheckKind::UpperBound, 0.01,
      "exact factor shape (1 + log 2m4)^7 (1 + log 2m4^2)^3 instead of a folded tenth power");
  std::vector<GrowthFactor> fa = {{BigRat(2), 1, 7}, {BigRat(2), 2, 3}};
  GrowthSolution ga = solve_growth_inequality(Aa, fa);
  add(sb.records, "large-m3.case-l.m4", RealBall(ga.value, kPrec), 3.8e85, "3.8e85",
      CheckKind::UpperBound, 0.05);

  // Case min{m_i, l_j} = m_i: log(delta) < 2 m_i log(alpha).
  RealBall ldb = k.two_log_alpha * s.c_min;
  add(sb.records, "large-m3.case-m.log-delta-coef", ldb, 3e15, "3e15", CheckKind::UpperBound, 0.01,
      "per unit of (1 + log 2m4)^2 (1 + log 2m4^2)");
  // l4 < c_l log(delta) (1 + log 2m4), then m4 < c_m l4 log(delta) (1 + log 2m4).
  RealBall Ab = s.c_m * s.c_l * ldb * ldb;
  add(sb.records, "large-m3.case-m.growth-A", Ab, 2e58, "2e58", CheckKind::UpperBound, 0.01,
      "exact factor shape (1 + log 2m4)^6 (1 + log 2m4^2)^2");
  std::vector<GrowthFactor> fb = {{BigRat(2), 1, 6}, {BigRat(2), 2, 2}};
  GrowthSolution gb = solve_growth_inequality(Ab, fb);
  add(sb.records, "large-m3.case-m.m4", RealBall(gb.value, kPrec), 1.6e84, "1.6e84",
      CheckKind::UpperBound, 0.05);

  BigInt U = ga.ceiling > gb.ceiling ? ga.ceiling : gb.ceiling;
  if (U < 10000) U = 10000;
  sb.slots.tighten("m4", U);
  sb.slots.tighten("n2", 2 * U);
  sb.slots.tighten("l3", ceil_at(s.c_l3, {{BigRat(2), 1, 2}}, U));
  sb.slots.tighten("l4", ceil_at(s.c_min, {{BigRat(2), 1, 2}, {BigRat(2), 2, 1}}, U));
  BigInt m3a = ceil_at(m3, {{BigRat(2), 1, 4}, {BigRat(2), 2, 2}}, U);
  BigInt m3b = ceil_at(s.c_min, {{BigRat(2), 1, 2}, {BigRat(2), 2, 1}}, U);
  sb.slots.tighten("m3", m3a > m3b ? m3a : m3b);
  BigInt lda = ceil_at(ld, {{BigRat(2), 1, 4}, {BigRat(2), 2, 2}}, U);
  BigInt ldb_c = ceil_at(ldb, {{BigRat(2), 1, 2}, {BigRat(2), 2, 1}}, U);
  sb.slots.tighten("log_delta", lda > ldb_c ? lda : ldb_c);
  sb.ceiling = sb.slots.get("n2");
  add(sb.records, "large-m3.ceiling", RealBall(sb.ceiling, kPrec), 3.8e85, "3.8e85",
      CheckKind::UpperBound, 0.05, "max{n2, m1, m2} < 2 m4");
  return sb;
}

ScenarioBounds small_m3(const Constants& k, const Shared& s, ScenarioBounds sb) {
  // log(delta) < 2 m3 log(alpha) / n <= 200 log(alpha).
  RealBall ld = k.num(200) * k.log_alpha;
  add(sb.records, "small-m3.log-delta", ld, 100, "100", CheckKind::UpperBound, 0.01,
      "the single-solution inequality gives 200 log(alpha)");
  RealBall A = s.c_m * s.c_l * ld * ld;
  add(sb.records, "small-m3.growth-A", A, 2e31, "2e31", CheckKind::UpperBound, 0.01,
      "exact factor shape (1 + log 2m4)^2");
  std::vector<GrowthFactor> f = {{BigRat(2), 1, 2}};
  GrowthSolution g = solve_growth_inequality(A, f);
  add(sb.records, "small-m3.m4", RealBall(g.value, kPrec), 1e38, "1e38", CheckKind::UpperBound,
      0.05);
  sb.slots.tighten("m4", g.ceiling);
  sb.slots.tighten("n2", 2 * g.ceiling);
  sb.slots.tighten("n1", 2 * g.ceiling);
  sb.slots.tighten("m3", 100);
  sb.slots.tighten("log_delta", ceil_of(ld.upper()));
  sb.slots.tighten("l4", ceil_at(s.c_l * ld, {{BigRat(2), 1, 1}}, g.ceiling));
  sb.ceiling = sb.slots.get("n2");
  add(sb.records, "small-m3.ceiling", RealBall(sb.ceiling, kPrec), 1e40, "1e40",
      CheckKind::UpperBound, 0.05, "max{n1, m1, m2} < 2 m4");
  return sb;
}

}  // namespace

ScenarioBounds lemma_chain(Scenario scenario) {
  Constants k;
  ScenarioBounds sb;
  sb.scenario = scenario;
  Shared s = shared_lemmas(k, sb.records);
  switch (scenario) {
    case Scenario::SmallL4: return small_l4(k, s, std::move(sb));
    case Scenario::LargeL4LargeM3: return large_m3(k, s, std::move(sb));
    case Scenario::LargeL4SmallM3: return small_m3(k, s, std::move(sb));
  }
  throw std::logic_error("lemma_chain: unknown scenario");
}

}  // namespace pellbaker
