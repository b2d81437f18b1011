// Python bindings: binary64 splines, with boundary systems optionally solved
// in high precision.

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "splinedft/bench.hpp"
#include "splinedft/boundary.hpp"
#include "splinedft/cubic.hpp"
#include "splinedft/fourier.hpp"
#include "splinedft/kernel.hpp"
#include "splinedft/spline.hpp"

namespace py = pybind11;
using namespace splinedft;

namespace {

template <class R>
BoundaryVector<R> pick_boundary(const SampleGrid<R>& g, int theta, const std::string& method,
                                const std::optional<std::vector<double>>& differences, const PrecisionContext& ctx) {
    if (method == "method1") return method1_boundary(g, theta, ctx);
    if (method == "method2") return method2_boundary(g, theta, ctx);
    if (method == "zero") return zero_boundary(g, theta);
    if (method == "exact") {
        if (!differences) throw DomainError("method 'exact' needs differences=[f'(T)-f'(0), ...]");
        std::vector<R> d(differences->begin(), differences->end());
        return exact_boundary<R>(g, theta, d);
    }
    throw DomainError("method must be method1, method2, zero or exact, got '" + method + "'");
}

template <class R>
std::vector<std::vector<double>> solve_derivs(const std::vector<double>& values, double period, int theta,
                                              const std::string& method,
                                              const std::optional<std::vector<double>>& differences,
                                              const PrecisionContext& ctx) {
    const SampleGrid<R> g(R(period), std::vector<R>(values.begin(), values.end()));
    const auto s = build_spline(g, theta, pick_boundary(g, theta, method, differences, ctx), ctx);
    std::vector<std::vector<double>> out;
    for (const auto& row : s.deriv()) {
        out.emplace_back();
        for (const auto& x : row) out.back().push_back(to_double(x));
    }
    return out;
}

SplineFunction<double> interpolate(const std::vector<double>& values, double period, int theta,
                                   const std::string& method, int digits,
                                   const std::optional<std::vector<double>>& differences, double t_start) {
    const PrecisionContext ctx(digits);
    std::vector<std::vector<double>> d;
    if (ctx.high_precision()) {
        const PrecisionScope scope(ctx);
        d = solve_derivs<HighReal>(values, period, theta, method, differences, ctx);
    } else {
        d = solve_derivs<double>(values, period, theta, method, differences, ctx);
    }
    return SplineFunction<double>(theta, SampleGrid<double>(period, values, t_start), std::move(d));
}

py::dict row_to_dict(const BenchRow& r) {
    py::dict d;
    d["function"] = r.function;
    d["theta"] = r.theta;
    d["n"] = r.n;
    d["method"] = r.method;
    d["lambda"] = r.lambda;
    d["digits"] = r.digits;
    d["e_max"] = r.e_max;
    d["e_avg"] = r.e_avg;
    d["gain_max"] = r.gain_max;
    d["gain_avg"] = r.gain_avg;
    d["paper_e_max"] = r.paper_e_max;
    d["paper_e_avg"] = r.paper_e_avg;
    d["status"] = r.status;
    return d;
}

template <class S>
py::array_t<double> eval_array(const S& s, py::array_t<double, py::array::forcecast> t, int beta) {
    auto in = t.unchecked();
    py::array_t<double> out(t.request().shape);
    double* o = out.mutable_data();
    const double* p = t.data();
    for (py::ssize_t i = 0; i < in.size(); ++i) o[i] = s.eval(p[i], beta);
    return out;
}

}  // namespace

PYBIND11_MODULE(_splinedft, m) {
    m.doc() = "Arbitrary-degree periodic-kernel splines with optimised boundary conditions";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<SingularMatrix>(m, "SingularMatrix", base.ptr());
    py::register_exception<SingularSystem>(m, "SingularSystem", base.ptr());
    py::register_exception<ParityViolation>(m, "ParityViolation", base.ptr());
    py::register_exception<EvenNNotSupported>(m, "EvenNNotSupported", base.ptr());
    py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<OutOfDomain>(m, "OutOfDomain", base.ptr());
    py::register_exception<BadOrder>(m, "BadOrder", base.ptr());

    py::class_<SplineFunction<double>>(m, "Spline")
        .def_property_readonly("theta", &SplineFunction<double>::theta)
        .def_property_readonly("n", &SplineFunction<double>::n)
        .def_property_readonly("t_start", &SplineFunction<double>::t_start)
        .def_property_readonly("t_end", &SplineFunction<double>::t_end)
        .def_property_readonly("derivatives",
                               [](const SplineFunction<double>& s) { return s.deriv(); },
                               "derivatives[mu][j] = s^(mu)(t_j), mu = 0..theta")
        .def("__call__", [](const SplineFunction<double>& s, double t, int beta) { return s.eval(t, beta); },
             py::arg("t"), py::arg("beta") = 0)
        .def("__call__", &eval_array<SplineFunction<double>>, py::arg("t"), py::arg("beta") = 0)
        .def("integrate", &SplineFunction<double>::integrate, py::arg("a"), py::arg("b"))
        .def(
            "fourier_transform",
            [](const SplineFunction<double>& s, const std::vector<double>& omegas) {
                const auto z = spline_fourier_transform<double>(s, omegas);
                std::vector<std::complex<double>> out;
                for (std::size_t i = 0; i < z.size(); ++i) out.emplace_back(z[i].re, z[i].im);
                return out;
            },
            py::arg("omegas"))
        .def("to_json", [](const SplineFunction<double>& s) { return spline_to_json(s, PrecisionContext()); })
        .def_static("from_json", [](const std::string& text) { return spline_from_json<double>(text); });

    m.def("interpolate", &interpolate, py::arg("values"), py::arg("period"), py::arg("theta"),
          py::arg("method") = "method2", py::arg("digits") = 15, py::arg("differences") = py::none(),
          py::arg("t_start") = 0.0,
          "Spline of degree theta through equispaced samples values[0..N] on [t_start, t_start + period].\n"
          "digits > 15 solves the boundary and node systems in high precision before rounding.");

    py::class_<CubicSpline<double>>(m, "CubicSpline")
        .def_property_readonly("n", &CubicSpline<double>::n)
        .def("__call__", [](const CubicSpline<double>& s, double t, int beta) { return s.eval(t, beta); },
             py::arg("t"), py::arg("beta") = 0)
        .def("__call__", &eval_array<CubicSpline<double>>, py::arg("t"), py::arg("beta") = 0);
    m.def(
        "cubic",
        [](const std::vector<double>& values, double period, const std::string& kind) {
            const SampleGrid<double> g(period, values);
            if (kind == "natural") return cubic_natural(g);
            if (kind == "not-a-knot") return cubic_not_a_knot(g);
            throw DomainError("kind must be 'natural' or 'not-a-knot'");
        },
        py::arg("values"), py::arg("period"), py::arg("kind") = "not-a-knot");

    m.def(
        "eulerian_row",
        [](int theta) {
            py::list out;
            for (const auto& v : eulerian_row(theta)) out.append(py::int_(py::str(v.str())));
            return out;
        },
        py::arg("theta"));

    m.def(
        "benchmark",
        [](const std::string& function, const std::vector<int>& thetas, const std::vector<int>& ns,
           const std::vector<std::string>& methods, int lambda, int digits) {
            BenchConfig cfg;
            cfg.function = function;
            cfg.thetas = thetas;
            cfg.ns = ns;
            cfg.methods = methods;
            cfg.lambda = lambda;
            cfg.digits = digits;
            std::vector<BenchRow> rows;
            {
                py::gil_scoped_release release;
                rows = run_benchmark(cfg);
            }
            py::list out;
            for (const auto& r : rows) out.append(row_to_dict(r));
            return out;
        },
        py::arg("function") = "g1", py::arg("thetas") = std::vector<int>{3},
        py::arg("ns") = std::vector<int>{31, 101, 501},
        py::arg("methods") = std::vector<std::string>{"method1", "method2", "cubic-ns", "cubic-nak"},
        py::arg("lam") = 10, py::arg("digits") = 15);

    m.def("paper_cell", &paper_cell, py::arg("function"), py::arg("theta"), py::arg("n"), py::arg("method"),
          py::arg("is_max") = true);
    m.def("required_digits", &required_digits, py::arg("theta"), py::arg("n"), py::arg("method"));
}
