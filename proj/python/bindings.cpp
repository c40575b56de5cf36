#include <pybind11/pybind11.h>
#include <pybind11/functional.h>
#include <pybind11/stl.h>

#include <sstream>

#include "splitkernel/analyzer.hpp"
#include "splitkernel/cli.hpp"
#include "splitkernel/errors.hpp"
#include "splitkernel/gluing.hpp"
#include "splitkernel/hardy.hpp"
#include "splitkernel/probe.hpp"
#include "splitkernel/report.hpp"
#include "splitkernel/specialfn.hpp"

namespace py = pybind11;
using namespace splitkernel;

namespace {

// Reports cross the boundary as JSON text; the Python side decodes them.
std::string structured(const report::Json& j) { return report::dump_structured(j); }

InequalityInstance make(const std::string& kernel, const std::string& p, const std::string& q,
                        const std::string& u, const std::string& v) {
  return make_instance(catalog(parse_kernel_arg(kernel)), parse_weight(u), parse_weight(v),
                       parse_exponent(p), parse_exponent(q));
}

PowerInstance power_instance(const std::string& p, const std::string& q, double beta,
                             double gamma, double param) {
  PowerInstance pi;
  pi.p = parse_exponent(p);
  pi.q = parse_exponent(q);
  pi.beta = beta;
  pi.gamma = gamma;
  pi.param = param;
  return pi;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Weighted norm inequalities for splitting kernels";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<UnknownKernel>(m, "UnknownKernel", base.ptr());
  py::register_exception<ParamOutOfRange>(m, "ParamOutOfRange", base.ptr());
  py::register_exception<ExponentOrderViolation>(m, "ExponentOrderViolation", base.ptr());
  py::register_exception<ExponentOutOfScope>(m, "ExponentOutOfScope", base.ptr());
  py::register_exception<HypothesisViolated>(m, "HypothesisViolated", base.ptr());
  py::register_exception<SideConditionViolated>(m, "SideConditionViolated", base.ptr());
  py::register_exception<DivergentIntegral>(m, "DivergentIntegral", base.ptr());
  py::register_exception<NonConvergent>(m, "NonConvergent", base.ptr());

  m.def("catalog_names", &catalog_names);

  m.def("struve", [](double alpha, double x) { return struve(alpha, x); }, py::arg("alpha"),
        py::arg("x"));
  m.def("struve_series", [](double alpha, double x) { return struve_series(alpha, x); });
  m.def("struve_asymptotic", [](double alpha, double x) { return struve_asymptotic(alpha, x); });

  m.def(
      "integrate",
      [](const std::function<double(double)>& f, double lo, double hi, double rel_tol) {
        return integrate(f, Interval(lo, hi), rel_tol).value;
      },
      py::arg("f"), py::arg("lo"), py::arg("hi"), py::arg("rel_tol") = 1e-10);

  m.def(
      "_check",
      [](const std::string& kernel, const std::string& p, const std::string& q,
         const std::string& u, const std::string& v) {
        return structured(report::to_json(check_boundedness(make(kernel, p, q, u, v))));
      },
      py::arg("kernel"), py::arg("p") = "2", py::arg("q") = "2", py::arg("u") = "x^0",
      py::arg("v") = "x^0");

  m.def(
      "_probe",
      [](const std::string& kernel, const std::string& p, const std::string& q,
         const std::string& u, const std::string& v, int region, std::vector<double> r_grid) {
        if (region != 1 && region != 2) throw ConfigError("region must be 1 or 2");
        const auto inst = make(kernel, p, q, u, v);
        return structured(report::to_json(
            extremal_ratio_scan(inst, region == 1 ? Region::One : Region::Two, r_grid)));
      },
      py::arg("kernel"), py::arg("p"), py::arg("q"), py::arg("u"), py::arg("v"),
      py::arg("region"), py::arg("r_grid"));

  m.def(
      "_sharp",
      [](const std::string& kernel) {
        return structured(report::to_json(sharp_constant_probe(kernel, 2.0, 2.0)));
      },
      py::arg("kernel"));

  m.def(
      "_glue",
      [](const std::string& kernel, const std::string& p, const std::string& q,
         const std::string& u, const std::string& v, std::vector<double> grid) {
        const auto entry = catalog(parse_kernel_arg(kernel));
        const auto g = gluing_from_kernel(entry.spec, parse_weight(u), parse_weight(v),
                                          parse_exponent(p), parse_exponent(q));
        return structured(report::to_json(verify_equivalence(g, grid)));
      },
      py::arg("kernel"), py::arg("p"), py::arg("q"), py::arg("u"), py::arg("v"),
      py::arg("grid"));

  m.def(
      "transform",
      [](const std::string& kernel, double c, double a, double lo, double hi, double y) {
        return apply_transform(catalog(parse_kernel_arg(kernel)).kernel,
                               power_window(c, a, lo, hi), y);
      },
      py::arg("kernel"), py::arg("c"), py::arg("a"), py::arg("lo"), py::arg("hi"), py::arg("y"),
      "T applied to c*x^a on (lo, hi), evaluated at y.");

  m.def(
      "closed_form",
      [](const std::string& kernel, const std::string& p, const std::string& q, double beta,
         double gamma, double param) -> std::string {
        const auto pi = power_instance(p, q, beta, gamma, param);
        if (kernel == "laplace") return to_string(laplace_power_verdict(pi));
        if (kernel == "struve") return to_string(struve_power_verdict(pi));
        if (kernel == "stieltjes") return to_string(stieltjes_power_verdict(pi));
        if (kernel == "sine") return to_string(sine_power_verdict(pi).sharpVerdict);
        throw UnknownKernel("no closed form for '" + kernel + "'");
      },
      py::arg("kernel"), py::arg("p"), py::arg("q"), py::arg("beta"), py::arg("gamma"),
      py::arg("param") = 1.0);

  m.def(
      "_run",
      [](const std::vector<std::string>& args) {
        std::vector<std::string> argv{"splitkernel"};
        argv.insert(argv.end(), args.begin(), args.end());
        std::vector<char*> ptrs;
        for (auto& a : argv) ptrs.push_back(a.data());
        std::ostringstream out, err;
        const int code = cli::run(static_cast<int>(ptrs.size()), ptrs.data(), out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
