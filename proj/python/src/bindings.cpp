// Python module mlspec._core: command pipelines and a few direct operations.
#include "mlspec/errors.hpp"
#include "mlspec/homsym.hpp"
#include "mlspec/pipeline.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <tuple>

namespace py = pybind11;
using namespace mlspec;

namespace {

RunConfig make_config(const std::string& poly, int k, unsigned precision) {
  RunConfig c;
  c.poly = poly;
  c.k = k;
  c.precision = precision;
  return c;
}

std::tuple<std::string, std::string, int> run(const std::string& command, const RunConfig& c) {
  c.validate();
  CommandResult r = run_command(command, c);
  return {r.report.dump(), r.csv, r.status};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Arbitrary-precision recurrence spectra";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<ResourceLimitError>(m, "ResourceLimitError", base.ptr());
  py::register_exception<PrecisionError>(m, "PrecisionError", base.ptr());
  py::register_exception<HypothesisError>(m, "HypothesisError", base.ptr());
  py::register_exception<UndecidedError>(m, "UndecidedError", base.ptr());

  m.attr("DEFAULT_PRECISION") = kDefaultPrecision;
  m.attr("MIN_PRECISION") = kMinPrecision;

  py::class_<RunConfig>(m, "RunConfig")
      .def(py::init<>())
      .def_readwrite("poly", &RunConfig::poly)
      .def_readwrite("k", &RunConfig::k)
      .def_readwrite("precision", &RunConfig::precision)
      .def_readwrite("window_lo", &RunConfig::window_lo)
      .def_readwrite("window_hi", &RunConfig::window_hi)
      .def_readwrite("order", &RunConfig::order)
      .def_readwrite("K", &RunConfig::K)
      .def_readwrite("seed", &RunConfig::seed)
      .def_readwrite("word", &RunConfig::word)
      .def_readwrite("half", &RunConfig::half)
      .def_readwrite("R", &RunConfig::R)
      .def_readwrite("a", &RunConfig::a)
      .def_readwrite("b", &RunConfig::b);

  m.def("command_names", &command_names);
  m.def("run_command", &run, py::arg("command"), py::arg("config"),
        "Runs a command; returns (report JSON, CSV, exit status).");

  m.def(
      "parse_polynomial",
      [](const std::string& text) {
        IntPolynomial P = parse_polynomial(text);
        std::vector<py::int_> coeffs;
        for (const auto& c : P.coeffs()) coeffs.emplace_back(py::int_(py::str(to_decimal(c))));
        return std::make_pair(P.to_string(), coeffs);
      },
      py::arg("text"), "Normalized text and ascending integer coefficients.");

  m.def(
      "rho",
      [](const std::string& poly, long lo, long hi, int k, unsigned precision) {
        RunConfig c = make_config(poly, k, precision);
        c.window_lo = lo;
        c.window_hi = hi;
        return std::get<0>(run("rho", c));
      },
      py::arg("poly"), py::arg("lo") = -50, py::arg("hi") = 50, py::arg("k") = 0,
      py::arg("precision") = kDefaultPrecision);

  m.def(
      "hom_sym",
      [](std::size_t r, std::size_t m, const std::vector<std::pair<py::int_, py::int_>>& xs) {
        std::vector<Rational> q;
        for (const auto& [n, d] : xs)
          q.emplace_back(Integer(py::repr(n).cast<std::string>()), Integer(py::repr(d).cast<std::string>()));
        const Rational h = hom_sym(r, m, q);
        return std::make_pair(py::int_(py::str(to_decimal(Integer(numerator(h))))),
                              py::int_(py::str(to_decimal(Integer(denominator(h))))));
      },
      py::arg("r"), py::arg("m"), py::arg("xs"), "H_r^(m) at rationals given as (numerator, denominator).");
}
