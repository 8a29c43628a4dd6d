#include <doctest.h>

#include <set>
#include <sstream>

#include "pellbaker/driver.hpp"

using namespace pellbaker;

namespace {

std::size_t count_lines(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

PipelineConfig small_fibonacci() {
  PipelineConfig cfg;
  cfg.family = "fibonacci";
  cfg.box.family = "fibonacci";
  cfg.box.l1max = cfg.box.m1max = cfg.box.l2max = cfg.box.m2max = 20;
  cfg.box.n2max = 10;
  return cfg;
}

}  // namespace

TEST_CASE("verdicts") {
  CHECK(judge(1.005, 1.0, CheckKind::Relative, 0.01) == Verdict::Match);
  CHECK(judge(1.02, 1.0, CheckKind::Relative, 0.01) == Verdict::Mismatch);
  CHECK(judge(0.98, 1.0, CheckKind::Relative, 0.01) == Verdict::Mismatch);
  CHECK(judge(0.5, 1.0, CheckKind::UpperBound, 0.01) == Verdict::WithinTolerance);
  CHECK(judge(1.5, 1.0, CheckKind::UpperBound, 0.01) == Verdict::Mismatch);
  CHECK(judge(1.0, 1.0, CheckKind::UpperBound, 0.01) == Verdict::Match);
  CHECK(judge(230, 230, CheckKind::Exact, 0) == Verdict::Match);
  CHECK(judge(231, 230, CheckKind::Exact, 0) == Verdict::Mismatch);
  CHECK(judge(5e-221, 2e-220, CheckKind::Magnitude, 0) == Verdict::Match);
  CHECK(judge(1e-230, 2e-220, CheckKind::Magnitude, 0) == Verdict::Mismatch);
  for (Verdict v : {Verdict::Match, Verdict::WithinTolerance, Verdict::Mismatch})
    CHECK(parse_verdict(verdict_name(v)) == v);
  CHECK_THROWS(parse_verdict("maybe"));
}

TEST_CASE("empty and one-record reports") {
  PipelineReport empty;
  std::string e = emit_report(empty, ReportFormat::Jsonl);
  CHECK(count_lines(e) == 1);
  CHECK(e.find("\"record\":\"header\"") != std::string::npos);

  PipelineReport one;
  one.stages = {"legendre"};
  one.records.push_back({"legendre", "cf.a(M)", "1469", "1469", CheckKind::Exact, 0, Verdict::Match, ""});
  std::string o = emit_report(one, ReportFormat::Jsonl);
  CHECK(count_lines(o) == 2);
  CHECK(o.find("\"computed\":\"1469\"") != std::string::npos);
  CHECK_THROWS(parse_report_jsonl("{\"record\":\"stage\"}\n"));
}

TEST_CASE("exit status follows the verdicts") {
  PipelineReport r;
  r.records.push_back({"s", "a", "1", "1", CheckKind::Exact, 0, Verdict::Match, ""});
  r.records.push_back({"s", "b", "1", "2", CheckKind::UpperBound, 0, Verdict::WithinTolerance, ""});
  CHECK(r.all_ok());
  r.complete = false;
  CHECK_FALSE(r.all_ok());
  r.complete = true;
  r.records.push_back({"s", "c", "3", "2", CheckKind::Exact, 0, Verdict::Mismatch, ""});
  CHECK_FALSE(r.all_ok());
}

TEST_CASE("bounds-only report") {
  PipelineConfig cfg;
  cfg.stages = "bounds-only";
  auto rep = run_pipeline(cfg);
  REQUIRE(rep.complete);
  CHECK(rep.stages == std::vector<std::string>{"bounds"});
  REQUIRE_FALSE(rep.records.empty());
  std::set<std::string> names;
  for (const auto& r : rep.records) {
    CHECK(r.stage == "bounds");
    CHECK(names.insert(r.name).second);  // each row once
  }
  CHECK(names.count("global-ceiling") == 1);
}

TEST_CASE("property: a full report round-trips byte-identically") {
  PipelineConfig cfg;
  cfg.stages = "bounds,legendre";
  cfg.timings = true;
  auto rep = run_pipeline(cfg);
  std::string text = emit_report(rep, ReportFormat::Jsonl);
  CHECK(emit_report(parse_report_jsonl(text), ReportFormat::Jsonl) == text);
  CHECK(rep.timings.size() == 2);
}

TEST_CASE("Legendre stage values") {
  PipelineConfig cfg;
  cfg.stages = "legendre";
  auto rep = run_pipeline(cfg);
  REQUIRE(rep.complete);
  std::map<std::string, std::string> got;
  for (const auto& r : rep.records) got[r.name] = r.computed;
  CHECK(got["cf.a(M)"] == "1469");
  CHECK(got["l3-bound"] == "230");
}

TEST_CASE("Fibonacci pipeline lists the exceptional d") {
  auto rep = run_pipeline(small_fibonacci());
  REQUIRE(rep.complete);
  CHECK(rep.stages == std::vector<std::string>{"search"});
  std::map<std::string, std::string> got;
  for (const auto& r : rep.records) got[r.name] = r.computed;
  CHECK(got["d-values"] == "2, 3, 5");
  CHECK(got["witnesses"] == "3");
}

TEST_CASE("property: report text does not depend on the worker count") {
  auto cfg = small_fibonacci();
  std::string one = emit_report(run_pipeline(cfg), ReportFormat::Jsonl);
  cfg.jobs = 4;
  CHECK(emit_report(run_pipeline(cfg), ReportFormat::Jsonl) == one);
}

TEST_CASE("stage failures give an incomplete report") {
  PipelineConfig cfg;
  cfg.stages = "lll";
  cfg.lll_lmin = 1;
  cfg.lll_lmax = 3;
  cfg.lll_C = BigInt(10);  // far too small for the lattice condition
  auto rep = run_pipeline(cfg);
  CHECK_FALSE(rep.complete);
  CHECK_FALSE(rep.error.empty());
  CHECK_FALSE(rep.all_ok());
  std::string text = emit_report(rep, ReportFormat::Jsonl);
  CHECK(text.find("\"complete\":false") != std::string::npos);
}

TEST_CASE("configuration files") {
  auto cfg = parse_config(
      "# small run\n"
      "family = fibonacci\n"
      "l1 = 12\n"
      "n2 = 9   # trailing comment\n"
      "stages = search\n"
      "jobs = 3\n"
      "n2max = 1e10\n");
  CHECK(cfg.family == "fibonacci");
  CHECK(cfg.box.family == "fibonacci");
  CHECK(cfg.box.l1max == 12);
  CHECK(cfg.box.m1max == 200);
  CHECK(cfg.box.n2max == 9);
  CHECK(cfg.jobs == 3);
  CHECK(cfg.n2max == BigInt("10000000000"));
  CHECK_THROWS(parse_config("colour = blue\n"));
  CHECK_THROWS(parse_config("l1 twelve\n"));
  CHECK_THROWS(parse_config("l1 = twelve\n"));
  PipelineConfig bad;
  bad.stages = "bounds,astrology";
  auto rep = run_pipeline(bad);
  CHECK_FALSE(rep.complete);
  CHECK(rep.error.find("astrology") != std::string::npos);
}

TEST_CASE("exponent cutoff") {
  // alpha^(2L) < num / bound
  CHECK(exponent_cutoff(BigRat(1), BigRat(1, 5)) == 0);  // alpha^2 = 5.83 > 5
  CHECK(exponent_cutoff(BigRat(6), BigRat(1)) == 1);
  CHECK_THROWS(exponent_cutoff(BigRat(0), BigRat(1)));
}
