#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pellbaker/driver.hpp"
#include "pellbaker/expr.hpp"
#include "pellbaker/factor.hpp"
#include "pellbaker/pelleq.hpp"
#include "pellbaker/reduce.hpp"
#include "pellbaker/search.hpp"
#include "pellbaker/sequences.hpp"

namespace py = pybind11;
using namespace pellbaker;

namespace {

// Python ints cross the boundary as decimal strings; mpz has no buffer protocol.
py::int_ to_py(const BigInt& v) {
  return py::reinterpret_steal<py::int_>(PyLong_FromString(v.get_str().c_str(), nullptr, 10));
}

BigInt from_py(const py::int_& v) { return BigInt(py::str(v).cast<std::string>()); }

py::list to_py(const std::vector<BigInt>& vs) {
  py::list out;
  for (const auto& v : vs) out.append(to_py(v));
  return out;
}

py::dict witness_dict(const WitnessPair& w) {
  py::dict d;
  d["x1"] = to_py(w.x1);
  d["epsilon"] = w.epsilon;
  d["n1"] = w.n1;
  d["n2"] = w.n2;
  d["first"] = w.first;
  d["second"] = w.second;
  d["x_n1"] = to_py(w.x_n1);
  d["x_n2"] = to_py(w.x_n2);
  d["d"] = w.d ? py::object(to_py(*w.d)) : py::object(py::none());
  return d;
}

}  // namespace

PYBIND11_MODULE(_pellbaker, m) {
  m.doc() = "Pell-equation products of recurrence terms: exact search and reduction tools";

  m.def("terms", [](const std::string& family, unsigned long n) { return to_py(terms(family_by_name(family), n)); },
        py::arg("family"), py::arg("n"), "Terms t_0 .. t_n of pell, fibonacci or lucas.");

  m.def("is_squarefree", [](const py::int_& n) { return is_squarefree(from_py(n)); });

  m.def(
      "fundamental_solution",
      [](const py::int_& d) {
        auto fs = fundamental_solution(from_py(d));
        py::dict out;
        out["d"] = to_py(fs.d);
        out["x1"] = to_py(fs.x1);
        out["y1"] = to_py(fs.y1);
        out["epsilon"] = fs.epsilon;
        return out;
      },
      py::arg("d"));

  m.def("x_terms", [](const py::int_& x1, int eps, const py::int_& limit) {
    return to_py(x_terms(from_py(x1), eps, from_py(limit)));
  });

  m.def(
      "cf_quotients",
      [](const std::string& expr, std::size_t depth) {
        auto cf = cf_expand(parse_real_expr(expr), depth);
        return py::make_tuple(to_py(cf.quotients()), cf.terminated());
      },
      py::arg("expr"), py::arg("depth"), "Certified quotients and the terminated flag.");

  m.def(
      "find_witnesses",
      [](const std::string& family, int l1, int m1, int l2, int m2, int n2, unsigned jobs) {
        SearchBox b;
        b.family = family;
        b.l1max = l1;
        b.m1max = m1;
        b.l2max = l2;
        b.m2max = m2;
        b.n2max = n2;
        py::list out;
        std::vector<WitnessPair> ws;
        {
          py::gil_scoped_release nogil;
          ws = find_witnesses(b, jobs);
        }
        for (const auto& w : ws) out.append(witness_dict(w));
        return out;
      },
      py::arg("family"), py::arg("l1max"), py::arg("m1max"), py::arg("l2max"), py::arg("m2max"),
      py::arg("n2max"), py::arg("jobs") = 1);

  m.def(
      "reproduce",
      [](const std::string& stages, const std::string& family, unsigned jobs, const std::string& format) {
        PipelineConfig cfg;
        cfg.stages = stages;
        cfg.family = family;
        cfg.jobs = jobs;
        ReportFormat f = format == "table" ? ReportFormat::Table : ReportFormat::Jsonl;
        py::gil_scoped_release nogil;
        return emit_report(run_pipeline(cfg), f);
      },
      py::arg("stages") = "bounds-only", py::arg("family") = "pell", py::arg("jobs") = 1,
      py::arg("format") = "jsonl", "Runs the pipeline and returns the report text.");

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
}
