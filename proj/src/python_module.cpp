#include <sstream>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bohrconv/bohr.hpp"
#include "bohrconv/cli.hpp"
#include "bohrconv/errors.hpp"
#include "bohrconv/specfun.hpp"
#include "bohrconv/verify.hpp"

namespace py = pybind11;
using namespace bohrconv;

namespace {

py::dict radius_dict(const RadiusResult& r) {
  py::list hyps;
  for (const auto& h : r.hypotheses) hyps.append(py::make_tuple(h.name, h.ok));
  py::dict d;
  d["value"] = r.value;
  d["method"] = to_string(r.method);
  d["residual"] = r.residual;
  d["bracket"] = py::make_tuple(r.lo, r.hi);
  d["hypotheses"] = hyps;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Bohr radii of convolution operators";

  static py::exception<HypothesisViolation> hypothesis(m, "HypothesisViolation", PyExc_ValueError);
  static py::exception<NoRootError> no_root(m, "NoRootError", PyExc_ArithmeticError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const HypothesisViolation& e) {
      py::set_error(hypothesis, e.what());
    } catch (const NoRootError& e) {
      py::set_error(no_root, e.what());
    } catch (const DomainError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const InvalidInput& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  m.def("radius_derivative_pair", &radius_derivative_pair, py::arg("m"));
  m.def("radius_derivative_pair_with_a",
        [](std::size_t k, double a) { return radius_dict(radius_derivative_pair_with_a(k, a)); },
        py::arg("m"), py::arg("a"));
  m.def("radius_id0", &radius_id0, py::arg("a"));
  m.def("bombieri_id0", &bombieri_id0, py::arg("r"));
  m.def("cesaro_bombieri_bound", &cesaro_bombieri_bound, py::arg("r"));
  m.def("radius_integral_lower", [] { return radius_dict(radius_integral_lower()); });
  m.def("radius_integral_upper", [] {
    const auto c = radius_integral_upper();
    return py::make_tuple(c.r_min, c.a_min);
  });
  m.def("integral_threshold", &integral_threshold);
  m.def("radius_integral_with_a", [](double a) { return radius_dict(radius_integral_with_a(a)); },
        py::arg("a"));
  m.def("radius_lacunary_with_a",
        [](std::size_t k, double a) { return radius_dict(radius_lacunary_with_a(k, a)); },
        py::arg("m"), py::arg("a"));
  m.def("radius_hypergeometric",
        [](double a, double b, double c) { return radius_dict(radius_hypergeometric({a, b, c})); },
        py::arg("a"), py::arg("b"), py::arg("c"));
  m.def("shift_pair_lower_bound", &shift_pair_lower_bound, py::arg("m"));
  m.def("lambert_w", &lambert_w, py::arg("x"));
  m.def("dilog", &dilog, py::arg("x"));

  m.def(
      "run_suite",
      [](const std::string& suite, std::size_t samples, std::uint64_t seed, std::size_t order) {
        SuiteOptions opts;
        opts.samples = samples;
        opts.seed = seed;
        opts.order = order;
        std::vector<CheckReport> reports;
        {
          py::gil_scoped_release release;
          reports = run_suite(suite, opts);
        }
        nlohmann::json out = nlohmann::json::array();
        for (const auto& r : reports) out.push_back(to_json(r));
        return cli::dump(out);
      },
      py::arg("suite"), py::arg("samples") = 1000, py::arg("seed") = 0,
      py::arg("order") = kDefaultOrder);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code = 0;
        {
          py::gil_scoped_release release;
          code = cli::run(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
