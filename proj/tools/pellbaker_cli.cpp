#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pellbaker/bounds.hpp"
#include "pellbaker/driver.hpp"
#include "pellbaker/expr.hpp"
#include "pellbaker/heights.hpp"
#include "pellbaker/pelleq.hpp"
#include "pellbaker/reduce.hpp"
#include "pellbaker/search.hpp"
#include "pellbaker/sequences.hpp"

using namespace pellbaker;
using ordered_json = nlohmann::ordered_json;

namespace {

struct Globals {
  long prec_bits = 0;
  unsigned jobs = 1;
  std::string out;
  std::string config;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot write " + path);
    }
  }
  std::ostream& os() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }
  void line(const ordered_json& j) { os() << j.dump() << '\n'; }

 private:
  std::ofstream file_;
};

std::string pair_str(const IndexPair& p) {
  return std::to_string(p.first) + "," + std::to_string(p.second);
}

ordered_json witness_json(const std::string& family, const WitnessPair& w) {
  ordered_json j;
  j["family"] = family;
  j["x1"] = to_decimal(w.x1);
  j["epsilon"] = w.epsilon;
  j["n1"] = w.n1;
  j["n2"] = w.n2;
  j["l1"] = w.first.first;
  j["m1"] = w.first.second;
  j["l2"] = w.second.first;
  j["m2"] = w.second.second;
  j["x_n1"] = to_decimal(w.x_n1);
  j["x_n2"] = to_decimal(w.x_n2);
  j["d"] = w.d ? to_decimal(*w.d) : std::string("unfactored");
  return j;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string part;
  while (std::getline(in, part, sep)) out.push_back(part);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pellbaker: Pell equations whose x-solutions are products of two Pell numbers"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--prec-bits", g.prec_bits, "Precision ceiling in bits for certified evaluation");
  app.add_option("--jobs", g.jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--out", g.out, "Output file (default stdout)");
  app.add_option("--config", g.config, "key = value configuration file; flags win");

  // seqs
  auto* seqs = app.add_subcommand("seqs", "Binary recurrence sequences");
  seqs->require_subcommand(1);
  std::string family = "pell";
  unsigned long index = 0;
  auto* seqs_term = seqs->add_subcommand("term", "One term");
  seqs_term->add_option("--family", family)->check(CLI::IsMember({"pell", "fibonacci", "lucas"}));
  seqs_term->add_option("--m", index)->required();
  auto* seqs_table = seqs->add_subcommand("table", "Terms 0..n");
  seqs_table->add_option("--family", family)->check(CLI::IsMember({"pell", "fibonacci", "lucas"}));
  seqs_table->add_option("--n", index)->required();

  // pelleq
  auto* pelleq = app.add_subcommand("pelleq", "Pell equations x^2 - d y^2 = +-1");
  pelleq->require_subcommand(1);
  std::string d_text;
  std::string x1_text;
  int eps = 0;
  unsigned count = 10;
  auto* fund = pelleq->add_subcommand("fund", "Fundamental solution");
  fund->add_option("--d", d_text)->required();
  auto* xterms = pelleq->add_subcommand("xterms", "First x-terms");
  xterms->add_option("--d", d_text);
  xterms->add_option("--x1", x1_text);
  xterms->add_option("--eps", eps)->check(CLI::IsMember({-1, 1}));
  xterms->add_option("--count", count);

  // bounds
  auto* bounds = app.add_subcommand("bounds", "Linear forms in logarithms");
  bounds->require_subcommand(1);
  int mt = 1, mD = 1;
  std::string mB = "1", mA;
  auto* matveev = bounds->add_subcommand("matveev", "Lower bound for log|Lambda|");
  matveev->add_option("--t", mt)->required();
  matveev->add_option("--D", mD)->required();
  matveev->add_option("--B", mB, "Real expression");
  matveev->add_option("--A", mA, "Comma separated real expressions")->required();
  std::string scenario;
  auto* chain = bounds->add_subcommand("chain", "Explicit bounds for one case of the argument");
  chain->add_option("--scenario", scenario)
      ->required()
      ->check(CLI::IsMember({"l4-le-100", "l4-gt-100-m3-gt-100", "l4-gt-100-m3-le-100"}));

  // reduce
  auto* reduce = app.add_subcommand("reduce", "Reduction of large bounds");
  reduce->require_subcommand(1);
  std::string expr = "log4/logalpha", M_text = "3.8e85";
  std::size_t depth = 20;
  auto* cf = reduce->add_subcommand("cf", "Certified continued fraction");
  cf->add_option("--expr", expr);
  cf->add_option("--depth", depth);
  std::string lc = "240";
  auto* legendre = reduce->add_subcommand("legendre", "a(M) and the resulting exponent bound");
  legendre->add_option("--expr", expr);
  legendre->add_option("--M", M_text);
  legendre->add_option("--c", lc, "Numerator constant of the inequality");
  std::string tau_e, mu_e, A_e, B_e;
  auto* dp = reduce->add_subcommand("dp", "Inhomogeneous reduction |u tau - v + mu| < A B^-w");
  dp->add_option("--tau", tau_e)->required();
  dp->add_option("--mu", mu_e)->required();
  dp->add_option("--A", A_e)->required();
  dp->add_option("--B", B_e)->required();
  dp->add_option("--M", M_text)->required();
  std::string linst;
  auto* lll = reduce->add_subcommand("lll", "Lattice lower bound for a linear form");
  lll->add_option("--linst", linst, "Instance file")->required()->check(CLI::ExistingFile);

  // search
  auto* search = app.add_subcommand("search", "Final verification");
  search->require_subcommand(1);
  SearchBox box = final_box();
  auto* two = search->add_subcommand("two-solutions", "d with two product solutions");
  two->add_option("--family", box.family)->check(CLI::IsMember({"pell", "fibonacci", "lucas"}));
  two->add_option("--l1", box.l1max);
  two->add_option("--m1", box.m1max);
  two->add_option("--l2", box.l2max);
  two->add_option("--m2", box.m2max);
  two->add_option("--n2", box.n2max);
  std::string dmax = "2000";
  int nmax = 10, lmax = 12;
  auto* direct = search->add_subcommand("direct-scan", "Scan squarefree d directly");
  direct->add_option("--family", family)->check(CLI::IsMember({"pell", "fibonacci", "lucas"}));
  direct->add_option("--dmax", dmax);
  direct->add_option("--nmax", nmax);
  direct->add_option("--lmax", lmax);

  // reproduce
  auto* repro = app.add_subcommand("reproduce", "Run the full verification and compare with published values");
  std::string stages, format = "jsonl";
  bool timings = false;
  repro->add_option("--stages", stages, "all, bounds-only, or a list of bounds,legendre,lll,search");
  repro->add_option("--format", format)->check(CLI::IsMember({"jsonl", "table"}));
  repro->add_flag("--timings", timings, "Emit per-stage wall times");
  repro->add_option("--family", family)->check(CLI::IsMember({"pell", "fibonacci"}));

  CLI11_PARSE(app, argc, argv);

  try {
    PipelineConfig cfg;
    if (!g.config.empty()) cfg = parse_config(read_file(g.config), cfg);
    if (app.count("--jobs")) cfg.jobs = g.jobs;
    const unsigned jobs = cfg.jobs;
    if (g.prec_bits > 0) set_precision_ceiling(g.prec_bits);
    Sink sink(g.out);

    if (seqs->parsed()) {
      const SequenceFamily& fam = family_by_name(family);
      if (seqs_term->parsed()) {
        sink.line({{"family", family}, {"m", index}, {"value", to_decimal(term(fam, index))}});
      } else {
        auto ts = terms(fam, index);
        for (std::size_t m = 0; m < ts.size(); ++m) {
          sink.line({{"family", family}, {"m", m}, {"value", to_decimal(ts[m])}});
        }
      }
    } else if (pelleq->parsed()) {
      if (fund->parsed()) {
        FundamentalSolution fs = fundamental_solution(parse_big_int(d_text));
        sink.line({{"d", to_decimal(fs.d)},
                   {"x1", to_decimal(fs.x1)},
                   {"y1", to_decimal(fs.y1)},
                   {"epsilon", fs.epsilon}});
      } else {
        std::optional<XSequence> seq;
        if (!d_text.empty()) {
          seq.emplace(fundamental_solution(parse_big_int(d_text)));
        } else if (!x1_text.empty() && eps != 0) {
          seq.emplace(parse_big_int(x1_text), eps);
        } else {
          throw std::invalid_argument("xterms needs --d, or --x1 with --eps");
        }
        for (unsigned n = 1; n <= count; ++n) {
          ordered_json j{{"n", n}, {"x", to_decimal(seq->x(n))}};
          if (seq->has_y()) j["y"] = to_decimal(seq->y(n));
          sink.line(j);
        }
      }
    } else if (bounds->parsed()) {
      if (matveev->parsed()) {
        MatveevInstance inst;
        inst.t = mt;
        inst.D = mD;
        inst.B = parse_real_expr(mB)(256);
        for (const auto& a : split(mA, ',')) inst.A.push_back(parse_real_expr(a)(256));
        RealBall lb = matveev_lower_bound(inst, 256);
        sink.line({{"t", mt}, {"D", mD}, {"log_lambda_lower_bound", lb.to_string(12)}});
      } else {
        ScenarioBounds sb = lemma_chain(scenario_from_name(scenario));
        for (const auto& r : sb.records) {
          ordered_json j;
          j["record"] = "lemma";
          j["scenario"] = scenario;
          j["name"] = r.name;
          j["computed"] = r.value.to_string(8);
          j["published"] = r.published_text;
          j["check"] = check_name(r.kind);
          j["verdict"] = verdict_name(judge(r.value.to_double(), r.published, r.kind, r.tolerance));
          if (!r.note.empty()) j["note"] = r.note;
          sink.line(j);
        }
        ordered_json slots;
        for (const auto& [k, v] : sb.slots.all()) slots[k] = to_decimal(v);
        sink.line({{"record", "ceiling"}, {"scenario", scenario}, {"ceiling", to_decimal(sb.ceiling)},
                   {"slots", slots}});
      }
    } else if (reduce->parsed()) {
      if (cf->parsed()) {
        ContinuedFraction c = cf_expand(parse_real_expr(expr), depth);
        std::vector<std::string> qs;
        for (const auto& a : c.quotients()) qs.push_back(to_decimal(a));
        sink.line({{"expr", expr}, {"quotients", qs}, {"terminated", c.terminated()}});
      } else if (legendre->parsed()) {
        ContinuedFraction c(parse_real_expr(expr));
        BigInt M = parse_big_int(M_text);
        LegendreResult r = legendre_bound(c, M);
        ordered_json j{{"expr", expr}, {"M", to_decimal(M)}, {"N", r.N}, {"aM", to_decimal(r.aM)}};
        if (expr == "log4/logalpha") {
          j["exponent_bound"] = to_decimal(legendre_apply(r.aM, parse_big_rat(lc), M));
        }
        sink.line(j);
      } else if (dp->parsed()) {
        DPQuery q{parse_real_expr(tau_e), parse_real_expr(mu_e), parse_real_expr(A_e),
                  parse_real_expr(B_e), parse_big_int(M_text)};
        DPResult r = dp_reduce(q);
        sink.line({{"w_max", to_decimal(r.w_max)},
                   {"convergent", r.index},
                   {"q", to_decimal(r.q)},
                   {"epsilon", r.epsilon.to_string(10)}});
      } else {
        LLLInstance inst = parse_lll_instance(read_file(linst));
        LLLBound b = lll_form_lower_bound(inst);
        sink.line({{"bound", RealBall(b.bound, 128).to_string(10)},
                   {"bound_exact", to_decimal(b.bound)},
                   {"theta2", RealBall(b.theta2, 128).to_string(10)},
                   {"C", to_decimal(b.C)}});
      }
    } else if (search->parsed()) {
      if (two->parsed()) {
        for (const auto& w : find_witnesses(box, jobs)) sink.line(witness_json(box.family, w));
      } else {
        DirectScanResult r = direct_d_scan(family, parse_big_int(dmax), nmax, lmax);
        for (const auto& w : r.witnesses) sink.line(witness_json(family, w));
        for (const auto& s : r.singles) {
          sink.line({{"record", "single"},
                     {"d", to_decimal(s.d)},
                     {"n", s.n},
                     {"x_n", to_decimal(s.x_n)},
                     {"pair", pair_str(s.pair)}});
        }
      }
    } else if (repro->parsed()) {
      if (!stages.empty()) cfg.stages = stages;
      if (timings) cfg.timings = true;
      if (repro->count("--family")) {
        cfg.family = family;
        cfg.box.family = family;
      }
      PipelineReport rep = run_pipeline(cfg);
      sink.os() << emit_report(rep, format == "table" ? ReportFormat::Table : ReportFormat::Jsonl);
      return rep.all_ok() ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
