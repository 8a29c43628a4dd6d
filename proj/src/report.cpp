#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "pellbaker/driver.hpp"

namespace pellbaker {

using ordered_json = nlohmann::ordered_json;

namespace {
constexpr const char* kTool = "pellbaker";
constexpr const char* kVersion = "0.1.0";
}  // namespace

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Match: return "match";
    case Verdict::WithinTolerance: return "within-tolerance";
    case Verdict::Mismatch: return "mismatch";
  }
  return "?";
}

const char* check_name(CheckKind k) {
  switch (k) {
    case CheckKind::Relative: return "relative";
    case CheckKind::UpperBound: return "upper-bound";
    case CheckKind::Exact: return "exact";
    case CheckKind::Magnitude: return "magnitude";
  }
  return "?";
}

Verdict parse_verdict(const std::string& s) {
  for (Verdict v : {Verdict::Match, Verdict::WithinTolerance, Verdict::Mismatch}) {
    if (s == verdict_name(v)) return v;
  }
  throw std::invalid_argument("unknown verdict: " + s);
}

CheckKind parse_check(const std::string& s) {
  for (CheckKind k : {CheckKind::Relative, CheckKind::UpperBound, CheckKind::Exact,
                      CheckKind::Magnitude}) {
    if (s == check_name(k)) return k;
  }
  throw std::invalid_argument("unknown check kind: " + s);
}

Verdict judge(double computed, double published, CheckKind kind, double tolerance) {
  switch (kind) {
    case CheckKind::Exact:
      return computed == published ? Verdict::Match : Verdict::Mismatch;
    case CheckKind::Magnitude:
      return std::fabs(std::log10(computed / published)) <= 1.0 ? Verdict::Match : Verdict::Mismatch;
    case CheckKind::Relative:
      return std::fabs(computed / published - 1.0) <= tolerance ? Verdict::Match : Verdict::Mismatch;
    case CheckKind::UpperBound:
      if (std::fabs(computed / published - 1.0) <= tolerance) return Verdict::Match;
      return computed < published ? Verdict::WithinTolerance : Verdict::Mismatch;
  }
  return Verdict::Mismatch;
}

bool PipelineReport::all_ok() const {
  if (!complete) return false;
  for (const auto& r : records) {
    if (r.verdict == Verdict::Mismatch) return false;
  }
  return true;
}

std::string emit_report(const PipelineReport& report, ReportFormat format) {
  std::ostringstream os;
  if (format == ReportFormat::Jsonl) {
    ordered_json h;
    h["record"] = "header";
    h["tool"] = kTool;
    h["version"] = kVersion;
    h["stages"] = report.stages;
    h["complete"] = report.complete;
    if (!report.complete) h["error"] = report.error;
    os << h.dump() << '\n';
    for (const auto& r : report.records) {
      ordered_json j;
      j["record"] = "stage";
      j["stage"] = r.stage;
      j["name"] = r.name;
      j["computed"] = r.computed;
      j["published"] = r.published;
      j["check"] = check_name(r.check);
      j["tolerance"] = r.tolerance;
      j["verdict"] = verdict_name(r.verdict);
      if (!r.note.empty()) j["note"] = r.note;
      os << j.dump() << '\n';
    }
    for (const auto& t : report.timings) {
      ordered_json j;
      j["record"] = "timing";
      j["stage"] = t.stage;
      j["seconds"] = t.seconds;
      os << j.dump() << '\n';
    }
    return os.str();
  }

  os << std::left << std::setw(10) << "stage" << std::setw(38) << "name" << std::setw(34)
     << "computed" << std::setw(34) << "published" << "verdict\n";
  auto cut = [](const std::string& s) { return s.size() > 32 ? s.substr(0, 29) + "..." : s; };
  for (const auto& r : report.records) {
    os << std::setw(10) << r.stage << std::setw(38) << r.name << std::setw(34) << cut(r.computed)
       << std::setw(34) << cut(r.published) << verdict_name(r.verdict) << '\n';
  }
  for (const auto& t : report.timings) {
    os << "time " << t.stage << ": " << std::fixed << std::setprecision(3) << t.seconds << " s\n";
  }
  if (!report.complete) os << "INCOMPLETE: " << report.error << '\n';
  return os.str();
}

PipelineReport parse_report_jsonl(const std::string& text) {
  PipelineReport rep;
  std::istringstream in(text);
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    ordered_json j = ordered_json::parse(line);
    const std::string kind = j.at("record");
    if (kind == "header") {
      header = true;
      rep.stages = j.at("stages").get<std::vector<std::string>>();
      rep.complete = j.at("complete");
      if (j.contains("error")) rep.error = j.at("error");
    } else if (kind == "stage") {
      StageRecord r;
      r.stage = j.at("stage");
      r.name = j.at("name");
      r.computed = j.at("computed");
      r.published = j.at("published");
      r.check = parse_check(j.at("check"));
      r.tolerance = j.at("tolerance");
      r.verdict = parse_verdict(j.at("verdict"));
      if (j.contains("note")) r.note = j.at("note");
      rep.records.push_back(std::move(r));
    } else if (kind == "timing") {
      rep.timings.push_back({j.at("stage"), j.at("seconds")});
    } else {
      throw std::invalid_argument("unknown record kind: " + kind);
    }
  }
  if (!header) throw std::invalid_argument("report has no header record");
  return rep;
}

SearchBox final_box() {
  SearchBox b;
  b.family = "pell";
  b.l1max = 200;
  b.m1max = 200;
  b.l2max = 120;
  b.m2max = 120;
  b.n2max = 150;
  return b;
}

void apply_config_value(PipelineConfig& cfg, const std::string& key, const std::string& value) {
  auto as_int = [&] {
    try {
      return std::stoi(value);
    } catch (const std::exception&) {
      throw std::invalid_argument("config: " + key + " expects an integer, got '" + value + "'");
    }
  };
  if (key == "family") {
    cfg.family = value;
    cfg.box.family = value;
  } else if (key == "l1") {
    cfg.box.l1max = as_int();
  } else if (key == "m1") {
    cfg.box.m1max = as_int();
  } else if (key == "l2") {
    cfg.box.l2max = as_int();
  } else if (key == "m2") {
    cfg.box.m2max = as_int();
  } else if (key == "n2") {
    cfg.box.n2max = as_int();
  } else if (key == "stages") {
    cfg.stages = value;
  } else if (key == "jobs") {
    cfg.jobs = static_cast<unsigned>(as_int());
  } else if (key == "n2max") {
    cfg.n2max = parse_big_int(value);
  } else if (key == "lll_lmin") {
    cfg.lll_lmin = as_int();
  } else if (key == "lll_lmax") {
    cfg.lll_lmax = as_int();
  } else if (key == "lll_X") {
    cfg.lll_X = parse_big_int(value);
  } else if (key == "lll_C") {
    cfg.lll_C = parse_big_int(value);
  } else if (key == "timings") {
    cfg.timings = value == "1" || value == "true" || value == "yes";
  } else if (key == "prec_bits") {
    set_precision_ceiling(as_int());
  } else {
    throw std::invalid_argument("config: unknown key '" + key + "'");
  }
}

PipelineConfig parse_config(const std::string& text, PipelineConfig base) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
    }
    apply_config_value(base, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return base;
}

}  // namespace pellbaker
