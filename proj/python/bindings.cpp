#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "grasstqft/cobordism.hpp"
#include "grasstqft/errors.hpp"
#include "grasstqft/suites.hpp"
#include "grasstqft/tqft.hpp"
#include "grasstqft/vi_engine.hpp"

namespace py = pybind11;
using namespace grasstqft;

// Exact values cross the boundary as decimal strings; the Python package turns
// them into int / Fraction.

namespace {

using Labels = std::vector<std::vector<int>>;

Multipartition to_multipartition(const Labels& labels) {
  Multipartition out;
  for (const auto& rows : labels) out.emplace_back(rows);
  return out;
}

ExecOptions exec(unsigned workers) {
  if (workers < 1) throw DomainError("workers must be >= 1");
  return {workers};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact Verlinde numbers and the Grassmannian TQFT";

  static py::exception<Error> error(m, "GrassError", PyExc_ValueError);
  static py::exception<ParseError> parse_error(m, "ParseError", error.ptr());
  static py::exception<TypeError> type_error(m, "CobordismTypeError", error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ParseError& e) {
      py::set_error(parse_error, e.what());
    } catch (const TypeError& e) {
      py::set_error(type_error, e.what());
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  m.def(
      "verlinde", [](int g, int r, int k, unsigned workers) { return to_string(verlinde_closed(g, r, k, exec(workers))); },
      py::arg("g"), py::arg("r"), py::arg("k"), py::arg("workers") = 1);
  m.def(
      "verlinde_via_quot",
      [](int g, int r, int k, std::int64_t d, unsigned workers) {
        return to_string(verlinde_via_quot(g, r, k, d, exec(workers)));
      },
      py::arg("g"), py::arg("r"), py::arg("k"), py::arg("d"), py::arg("workers") = 1);
  m.def(
      "verlinde_float",
      [](int g, int r, int k, unsigned precision) { return verlinde_closed_float(g, r, k, precision).value.to_string(40); },
      py::arg("g"), py::arg("r"), py::arg("k"), py::arg("precision") = 128);
  m.def(
      "vi_integral",
      [](int r, int n, int g, std::int64_t d, const std::string& poly, unsigned workers) {
        return to_string(vi_integral({g, d, r, n, parse_poly(poly, r)}, exec(workers)));
      },
      py::arg("r"), py::arg("n"), py::arg("g"), py::arg("d"), py::arg("poly"), py::arg("workers") = 1);
  m.def(
      "open_intersection",
      [](int g, int r, int k, std::int64_t d, const Labels& parts, std::int64_t t) {
        return to_string(open_intersection(g, r, k, d, to_multipartition(parts), t));
      },
      py::arg("g"), py::arg("r"), py::arg("k"), py::arg("d"), py::arg("parts"), py::arg("t"));
  m.def(
      "parabolic_verlinde",
      [](int g, int r, int k, std::int64_t d, const Labels& parts) {
        return to_string(parabolic_verlinde(g, r, k, d, to_multipartition(parts)));
      },
      py::arg("g"), py::arg("r"), py::arg("k"), py::arg("d"), py::arg("parts"));
  m.def(
      "matrix_element",
      [](int g, int r, int k, const Labels& inputs, const Labels& outputs, unsigned workers) {
        const auto trace = matrix_element_explain(
            {g, to_multipartition(inputs), to_multipartition(outputs), TheoryParams(r, k)}, exec(workers));
        py::dict out;
        out["value"] = to_string(trace.value);
        out["d"] = trace.d ? py::object(py::int_(*trace.d)) : py::object(py::none());
        out["t"] = trace.t;
        out["reason"] = trace.reason;
        return out;
      },
      py::arg("g"), py::arg("r"), py::arg("k"), py::arg("inputs") = Labels{}, py::arg("outputs") = Labels{},
      py::arg("workers") = 1);
  m.def(
      "fusion_table_json",
      [](int r, int k, unsigned workers) { return FusionTable::build(TheoryParams(r, k), exec(workers)).to_json().dump(); },
      py::arg("r"), py::arg("k"), py::arg("workers") = 1);
  m.def(
      "evaluate_cobordism",
      [](const std::string& expr, int r, int k, unsigned workers) {
        const RationalMatrix mat = evaluate_cobordism(*parse_cobordism(expr), TheoryParams(r, k), exec(workers));
        std::vector<std::vector<std::string>> rows(mat.rows());
        for (std::size_t i = 0; i < mat.rows(); ++i)
          for (std::size_t j = 0; j < mat.cols(); ++j) rows[i].push_back(to_string(mat.at(i, j)));
        return rows;
      },
      py::arg("expr"), py::arg("r"), py::arg("k"), py::arg("workers") = 1);
  m.def(
      "normalize_cobordism", [](const std::string& expr) { return print_cobordism(*normalize_cobordism(*parse_cobordism(expr))); },
      py::arg("expr"));
  m.def(
      "boundary_type", [](const std::string& expr) { return boundary_type(*parse_cobordism(expr)); }, py::arg("expr"));
  m.def(
      "verify_json",
      [](const std::string& suite, int r, int k, int gmax, unsigned workers) {
        SuiteBounds bounds;
        bounds.gmax = gmax;
        return to_json(run_suite(suite, TheoryParams(r, k), bounds, exec(workers))).dump();
      },
      py::arg("suite"), py::arg("r"), py::arg("k"), py::arg("gmax") = 2, py::arg("workers") = 1);
  m.attr("suites") = suite_names();
}
