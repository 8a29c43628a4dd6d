#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pellbaker/arith.hpp"
#include "pellbaker/bounds.hpp"
#include "pellbaker/search.hpp"

namespace pellbaker {

enum class Verdict { Match, WithinTolerance, Mismatch };

const char* verdict_name(Verdict v);
const char* check_name(CheckKind k);
Verdict parse_verdict(const std::string& s);
CheckKind parse_check(const std::string& s);

// Numeric comparison of a computed value with a published one.
Verdict judge(double computed, double published, CheckKind kind, double tolerance);

struct StageRecord {
  std::string stage;
  std::string name;
  std::string computed;
  std::string published;
  CheckKind check = CheckKind::Exact;
  double tolerance = 0.0;
  Verdict verdict = Verdict::Mismatch;
  std::string note;
};

struct StageTiming {
  std::string stage;
  double seconds = 0.0;
};

struct PipelineReport {
  std::vector<std::string> stages;
  std::vector<StageRecord> records;
  std::vector<StageTiming> timings;  // only filled when requested
  bool complete = true;
  std::string error;

  bool all_ok() const;
};

enum class ReportFormat { Jsonl, Table };

std::string emit_report(const PipelineReport& report, ReportFormat format);
PipelineReport parse_report_jsonl(const std::string& text);

// Default box of the final verification.
SearchBox final_box();

struct PipelineConfig {
  std::string family = "pell";
  SearchBox box = final_box();
  // "all", "bounds-only", or a comma list of bounds, legendre, lll, search.
  std::string stages = "all";
  unsigned jobs = 1;
  BigInt n2max = parse_big_int("3.8e85");  // published ceiling consumed by the reductions
  int lll_lmin = 1, lll_lmax = 230;
  BigInt lll_X = parse_big_int("1e90");
  std::optional<BigInt> lll_C;  // (5X)^5 when unset
  bool timings = false;
};

// Reads "key = value" lines ('#' comments) on top of `base`.
PipelineConfig parse_config(const std::string& text, PipelineConfig base = {});
void apply_config_value(PipelineConfig& cfg, const std::string& key, const std::string& value);

PipelineReport run_pipeline(const PipelineConfig& config);

struct LLLSweepEntry {
  int l = 0;
  BigRat bound;
  int dimension = 3;
};

struct LLLSweepResult {
  std::vector<LLLSweepEntry> entries;
  BigRat min_bound;
  int argmin = 0;
  BigInt cutoff;  // largest L with alpha^(2L) < 220 n2max / min_bound
};

// Lower bounds for the mixed form over l in [lmin, lmax].
LLLSweepResult run_lll_sweep(int lmin, int lmax, const BigInt& X, const BigInt& C,
                             const BigInt& n2max, unsigned jobs = 1);

// Largest L with alpha^(2L) < num / bound.
BigInt exponent_cutoff(const BigRat& num, const BigRat& bound);

}  // namespace pellbaker
