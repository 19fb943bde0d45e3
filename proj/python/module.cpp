#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "flab/conv.hpp"
#include "flab/expr_json.hpp"
#include "flab/harness.hpp"
#include "flab/kernels.hpp"
#include "flab/xform.hpp"

namespace py = pybind11;
using namespace flab;

namespace {

Function fn(const std::string& expr)
{
    return parse_function(expr);
}

} // namespace

PYBIND11_MODULE(_flab, m)
{
    m.doc() = "Numerical Fourier analysis on the real line";
    m.attr("__version__") = std::string(kToolkitVersion);

    py::register_exception<Error>(m, "FlabError", PyExc_ValueError);

    m.def("describe", [](const std::string& expr) { return fn(expr).describe(); }, py::arg("expr"));
    m.def("evaluate", [](const std::string& expr, double x) { return fn(expr)(x); }, py::arg("expr"), py::arg("x"));

    m.def(
        "fourier",
        [](const std::string& expr, double y, const std::string& convention, double tol) {
            return fourier(fn(expr), y, convention_from_string(convention), tol).value;
        },
        py::arg("expr"), py::arg("y"), py::arg("convention") = "classic", py::arg("tol") = 1e-9);

    m.def(
        "convolve",
        [](const std::string& f, const std::string& g, double x, double tol) { return convolve(fn(f), fn(g), x, tol); },
        py::arg("f"), py::arg("g"), py::arg("x"), py::arg("tol") = 1e-9);

    m.def(
        "inverse_symmetric",
        [](const std::string& fhat, double x, const std::string& convention, double tol) {
            return inverse_symmetric(fn(fhat), x, convention_from_string(convention), default_inversion_schedule(), tol)
                .value;
        },
        py::arg("fhat"), py::arg("x"), py::arg("convention") = "classic", py::arg("tol") = 1e-7);

    m.def(
        "kernel",
        [](const std::string& kind, double param, double x, bool hat) {
            const KernelFamily k{kernel_kind_from_string(kind), param};
            k.validate();
            return hat ? eval_kernel_hat(k, x) : eval_kernel(k, x);
        },
        py::arg("kind"), py::arg("param"), py::arg("x"), py::arg("hat") = false);

    m.def("check_ids", [] {
        std::vector<std::string> ids;
        for (const CheckSpec& c : check_registry()) ids.push_back(c.id);
        return ids;
    });

    m.def(
        "verify",
        [](const std::string& suite, unsigned jobs) {
            SuiteConfig cfg = suite_named(suite);
            cfg.jobs = jobs;
            Report r;
            {
                py::gil_scoped_release release;
                r = run_suite(cfg);
            }
            return r.to_json().dump();
        },
        py::arg("suite") = "all", py::arg("jobs") = 1, "Runs a suite and returns the JSON report text.");
}
