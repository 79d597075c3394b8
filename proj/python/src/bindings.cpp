// SPDX-License-Identifier: Apache-2.0
#include <algorithm>

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "nonlocal/classic_schemes.hpp"
#include "nonlocal/errors.hpp"
#include "nonlocal/fem1d.hpp"
#include "nonlocal/fem2d.hpp"
#include "nonlocal/kernel.hpp"
#include "nonlocal/sim.hpp"
#include "nonlocal/twopop.hpp"

namespace py = pybind11;
using namespace nonlocal;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

Array to_array(const std::vector<double>& v) {
    Array a(static_cast<py::ssize_t>(v.size()));
    std::copy(v.begin(), v.end(), a.mutable_data());
    return a;
}

Array to_array_2d(const std::vector<double>& v, std::size_t n) {
    Array a({static_cast<py::ssize_t>(n), static_cast<py::ssize_t>(n)});
    std::copy(v.begin(), v.end(), a.mutable_data());
    return a;
}

std::vector<double> flat(const Array& a) { return {a.data(), a.data() + a.size()}; }

Field1D field_1d(const Array& u, double L) {
    if (u.ndim() != 1) throw ConfigError("expected a 1D array");
    return Field1D(PeriodicGrid1D(L, static_cast<std::size_t>(u.shape(0))), flat(u));
}

Field2D field_2d(const Array& u, double L) {
    if (u.ndim() != 2 || u.shape(0) != u.shape(1)) throw ConfigError("expected a square 2D array (rows = y)");
    return Field2D(PeriodicGrid2D(L, static_cast<std::size_t>(u.shape(0))), flat(u));
}

KernelWeight weight_of(const std::string& s) {
    if (s == "unit") return KernelWeight::unit;
    if (s == "ball") return KernelWeight::ball;
    throw ConfigError("kernel weight must be 'unit' or 'ball'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Nonlocal adhesion PDE solvers on periodic grids";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);
    py::register_exception<DiagnosticError>(m, "DiagnosticError", PyExc_ValueError);

    m.def("perturbed_constant_ic", [](double L, std::size_t N, double base, double amplitude, std::uint64_t seed) {
        return to_array(perturbed_constant_ic(PeriodicGrid1D(L, N), base, amplitude, seed).values);
    }, py::arg("L"), py::arg("N"), py::arg("base"), py::arg("amplitude"), py::arg("seed"));
    m.def("perturbed_constant_ic_2d", [](double L, std::size_t N, double base, double amplitude, std::uint64_t seed) {
        return to_array_2d(perturbed_constant_ic(PeriodicGrid2D(L, N), base, amplitude, seed).values, N);
    }, py::arg("L"), py::arg("N"), py::arg("base"), py::arg("amplitude"), py::arg("seed"));
    m.def("gaussian_sum_ic", [](double L, std::size_t N) { return to_array(gaussian_sum_ic(PeriodicGrid1D(L, N)).values); },
          py::arg("L"), py::arg("N"));

    m.def("k_fft_1d", [](const Array& u, double L, double alpha, double r) {
        return to_array(k_fft_1d(field_1d(u, L), alpha, r));
    }, py::arg("u"), py::arg("L"), py::arg("alpha"), py::arg("r"));
    m.def("k_trapezoid_1d", [](const Array& u, double L, double alpha, double r) {
        return to_array(k_trapezoid_1d(field_1d(u, L), alpha, r));
    }, py::arg("u"), py::arg("L"), py::arg("alpha"), py::arg("r"));
    m.def("k_fft_2d", [](const Array& u, double L, double alpha, double r, const std::string& weight) {
        const auto f = field_2d(u, L);
        auto [kx, ky] = k_fft_2d(f, alpha, r, weight_of(weight));
        const std::size_t n = f.grid.cells_per_axis();
        return py::make_tuple(to_array_2d(kx, n), to_array_2d(ky, n));
    }, py::arg("u"), py::arg("L"), py::arg("alpha"), py::arg("r"), py::arg("weight") = "unit");

    m.def("fd_step", [](const Array& u, const Array& K, double L, double D, double tau) {
        const auto f = field_1d(u, L);
        return to_array(fd_step(f, flat(K), SchemeCoefficients::make(D, tau, f.grid.spacing())).values);
    }, py::arg("u"), py::arg("K"), py::arg("L"), py::arg("D"), py::arg("tau"));
    m.def("fv_step", [](const Array& u, const Array& K, double L, double D, double tau) {
        const auto f = field_1d(u, L);
        return to_array(fv_step(f, flat(K), SchemeCoefficients::make(D, tau, f.grid.spacing())).values);
    }, py::arg("u"), py::arg("K"), py::arg("L"), py::arg("D"), py::arg("tau"));
    m.def("fem_step", [](const Array& u, const Array& K, double L, double D, double tau, bool explicit_advection) {
        const auto f = field_1d(u, L);
        const FemParams1D p{D, tau};
        return to_array(explicit_advection ? fem_step_explicit(f, flat(K), p).values : fem_step(f, flat(K), p).values);
    }, py::arg("u"), py::arg("K"), py::arg("L"), py::arg("D"), py::arg("tau"), py::arg("explicit_advection") = false);
    m.def("fem2d_step", [](const Array& u, double L, double alpha, double r, double D, double tau, const std::string& weight) {
        const auto f = field_2d(u, L);
        return to_array_2d(fem2d_step(f, alpha, r, FemParams2D{D, tau}, weight_of(weight)).values, f.grid.cells_per_axis());
    }, py::arg("u"), py::arg("L"), py::arg("alpha"), py::arg("r"), py::arg("D"), py::arg("tau"), py::arg("weight") = "unit");

    m.def("classify_regime", [](const Array& u, const Array& v) {
        return std::string(to_string(classify_regime(flat(u), flat(v))));
    }, py::arg("u"), py::arg("v"));
    m.def("predicted_regime", [](double Su, double Sv, double C) { return std::string(to_string(predicted_regime(Su, Sv, C))); },
          py::arg("Su"), py::arg("Sv"), py::arg("C"));
    m.def("sorting_metrics", [](const Array& u, const Array& v) {
        const auto s = sorting_metrics(flat(u), flat(v));
        py::dict d;
        d["similarity"] = s.similarity;
        d["deviation_similarity"] = s.deviation_similarity;
        d["u_mass_in_v_aggregate"] = s.u_mass_in_v_aggregate;
        d["v_mass_in_u_aggregate"] = s.v_mass_in_u_aggregate;
        return d;
    }, py::arg("u"), py::arg("v"));

    m.def("run_config", [](const std::string& text, const std::filesystem::path& output) {
        auto c = SimConfig::parse(text);
        c.output = output;
        RunResult r;
        {
            py::gil_scoped_release release;
            r = run(c);
        }
        py::dict d;
        d["snapshots"] = r.snapshots;
        d["diagnostics"] = r.diagnostics;
        return d;
    }, py::arg("config_text"), py::arg("output"),
       "Parses `key = value` config text, runs it into `output`, and returns the written paths.");
}
