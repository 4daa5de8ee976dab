// Python bindings: run programs from source text or files and get back a
// report dict (ok, output, state, trace, trace_verbose).
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <sstream>
#include <string>

#include "avlang/ast.hpp"
#include "avlang/interp.hpp"
#include "avlang/parser.hpp"
#include "avlang/trace.hpp"

namespace py = pybind11;
using namespace avlang;

namespace {

py::object term_to_py(const Term& t) {
  return std::visit(detail::Overload{
                        [](const Num& n) -> py::object { return py::cast(n.value); },
                        [](const Str& s) -> py::object { return py::cast(s.text); },
                        [](const Atom& a) -> py::object { return py::cast(a.name); },
                        [](const auto&) -> py::object { return py::none(); },
                    },
                    t);
}

py::dict run_report(const std::string& source, std::uint64_t max_steps) {
  SourceUnit unit = parse_unit(source);
  Budget budget{max_steps};
  RunResult result = run_unit(unit, budget, TraceDetail::Full);

  std::string output;
  std::string trace;
  std::string trace_verbose;
  for (const DirectiveOutcome& d : result.directives) {
    output += d.output;
    trace += render_trace(d.trace, TraceVerbosity::Default);
    trace_verbose += render_trace(d.trace, TraceVerbosity::Verbose);
  }

  py::dict state;
  for (const auto& [name, value] : result.theta) state[py::cast(name)] = term_to_py(value);

  py::dict report;
  report["ok"] = result.succeeded;
  report["output"] = output;
  report["state"] = state;
  report["trace"] = trace;
  report["trace_verbose"] = trace_verbose;
  return report;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Interpreter core for the avlang language";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<EvalError>(m, "EvalError", PyExc_ValueError);
  py::register_exception<BudgetExceededError>(m, "BudgetExceededError", PyExc_RuntimeError);

  m.def("run_source", &run_report, py::arg("source"), py::arg("max_steps") = kDefaultMaxSteps,
        "Run program text; returns a dict with ok, output, state, trace, trace_verbose.");
  m.def(
      "run_file",
      [](const std::string& path, std::uint64_t max_steps) {
        return run_report(slurp(path), max_steps);
      },
      py::arg("path"), py::arg("max_steps") = kDefaultMaxSteps,
      "Run a .av file; returns the same report dict as run_source.");
  m.def(
      "render_source",
      [](const std::string& source) { return render_unit(parse_unit(source)); },
      py::arg("source"), "Parse program text and render it back in canonical form.");
}
