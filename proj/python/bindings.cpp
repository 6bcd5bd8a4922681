#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qsmt/cli.hpp"
#include "qsmt/formula.hpp"
#include "qsmt/report.hpp"
#include "qsmt/solver.hpp"

namespace py = pybind11;
using namespace qsmt;

namespace {

py::tuple cli(const std::vector<std::string> &args) {
    std::ostringstream out, err;
    int code;
    {
        py::gil_scoped_release release;
        code = run_cli(args, out, err);
    }
    return py::make_tuple(code, out.str(), err.str());
}

std::string solve_text(const std::string &text, const std::string &engine, std::size_t shots,
                       std::uint64_t seed, std::optional<unsigned> iterations,
                       std::optional<std::string> layout) {
    SolveOptions opts;
    opts.engine = parse_engine(engine);
    opts.shots = shots;
    opts.seed = seed;
    opts.iterations = iterations;
    if (layout) {
        opts.layout = parse_layout(*layout);
    }
    const BVProblem p = parse_problem(text);
    SolveReport r;
    {
        py::gil_scoped_release release;
        r = solve(p, opts);
    }
    return dump(solve_json(r));
}

} // namespace

PYBIND11_MODULE(_qsmt, m) {
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<BudgetError>(m, "BudgetError", PyExc_RuntimeError);
    py::register_exception<PlanError>(m, "PlanError", PyExc_RuntimeError);

    m.attr("spec_version") = kSpecVersion;
    m.def("run_cli", &cli, py::arg("args"),
          "Run the qsmt command line in-process; returns (exit_code, stdout, stderr).");
    m.def("normalize", [](const std::string &text) { return to_text(parse_problem(text)); },
          py::arg("text"));
    m.def("enumerate_solutions",
          [](const std::string &text) {
              const BVProblem p = parse_problem(text);
              const SolutionSet s = enumerate_solutions(p);
              std::vector<std::string> rows;
              for (const auto &a : s.assignments) {
                  rows.push_back(assignment_bitstring(p, a));
              }
              return rows;
          },
          py::arg("text"));
    m.def("plan_iterations",
          [](std::uint64_t n, std::uint64_t m_, std::optional<unsigned> k) {
              const IterationPlan p = plan_iterations(n, m_, k);
              return py::make_tuple(p.k, p.closed_form());
          },
          py::arg("n"), py::arg("m"), py::arg("k") = py::none());
    m.def("solve_json", &solve_text, py::arg("text"), py::arg("engine") = "auto",
          py::arg("shots") = 1024, py::arg("seed") = 0, py::arg("iterations") = py::none(),
          py::arg("layout") = py::none());
}
