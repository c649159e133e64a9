// SPDX-License-Identifier: Apache-2.0
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>

#include "qzeno/decay.hpp"
#include "qzeno/errors.hpp"
#include "qzeno/quadrature.hpp"
#include "qzeno/response_first.hpp"
#include "qzeno/response_second.hpp"
#include "qzeno/specfun.hpp"
#include "qzeno/verify.hpp"
#include "qzeno/zeno.hpp"

namespace py = pybind11;
using namespace pybind11::literals;

namespace {

qzeno::zeno::ObservationCount count_from_object(const py::object& n)
{
    if (py::isinstance<py::float_>(n)) {
        const double v = n.cast<double>();
        if (std::isinf(v)) return qzeno::zeno::ObservationCount::infinity();
        return qzeno::zeno::ObservationCount::finite(static_cast<std::uint64_t>(v));
    }
    return qzeno::zeno::ObservationCount::finite(n.cast<std::uint64_t>());
}

} // namespace

// The import name is `qzeno`; the CMake target is qzeno_py with OUTPUT_NAME
// qzeno so it does not clash with the static library target.
PYBIND11_MODULE(qzeno, m) // NOLINT
{
    m.doc() = "Survival laws for a continuously observed two-level system coupled to a "
              "scalar field, with a quadrature oracle for every closed form.";

    using namespace qzeno;

    // --- special functions ---------------------------------------------------
    py::class_<specfun::SpecialValue>(m, "SpecialValue")
        .def_readonly("value", &specfun::SpecialValue::value)
        .def_readonly("est_abs_error", &specfun::SpecialValue::est_abs_error)
        .def("__repr__", [](const specfun::SpecialValue& v) {
            return "SpecialValue(value=" + std::to_string(v.value) + ")";
        });
    m.attr("euler_gamma") = specfun::euler_gamma;
    m.def("sin_integral", &specfun::sin_integral, "z"_a);
    m.def("cos_integral", &specfun::cos_integral, "z"_a);
    m.def("cos_deficit_integral", &specfun::cos_deficit_integral, "x"_a);
    m.def("heaviside", &specfun::heaviside, "x"_a);

    // --- quadrature oracle ----------------------------------------------------
    py::class_<quad::QuadratureResult>(m, "QuadratureResult")
        .def_readonly("value", &quad::QuadratureResult::value)
        .def_readonly("est_abs_error", &quad::QuadratureResult::est_abs_error)
        .def_readonly("subdivisions", &quad::QuadratureResult::subdivisions);
    m.def(
        "integrate",
        [](const std::function<double(double)>& f, double a, double b, double tol) {
            return quad::integrate(f, a, b, tol);
        },
        "f"_a, "a"_a, "b"_a, "tol"_a = 1e-10);
    m.def("principal_value", &quad::principal_value, "f"_a, "singularity"_a, "a"_a, "b"_a,
          "tol"_a = 1e-10);
    m.def("response_double_integral", &quad::response_double_integral, "E"_a, "delta_tau"_a,
          "epsilon"_a, "tol"_a = 1e-10);
    m.def("flat_band_kernel_oracle", &quad::flat_band_kernel_oracle, "xi"_a, "a"_a, "tol"_a = 1e-10);

    // --- classical / Gaussian decay laws --------------------------------------
    m.def(
        "classical_survival",
        [](double t, double tau_E) { return decay::classical_survival(t, decay::ClassicalDecayParams(tau_E)); },
        "t"_a, "tau_E"_a);
    m.def(
        "quantum_short_time_survival",
        [](double t, double tau_z) {
            return decay::quantum_short_time_survival(t, decay::ZenoParams(tau_z));
        },
        "t"_a, "tau_z"_a);
    m.def(
        "repeated_survival",
        [](double T, std::uint64_t N, const std::function<double(double)>& law) {
            return decay::repeated_survival(decay::MeasurementSchedule(T, N), law);
        },
        "T"_a, "N"_a, "single_interval_survival"_a);
    m.def(
        "gaussian_zeno_limit",
        [](double T, std::uint64_t N, double tau_z) {
            return decay::gaussian_zeno_limit(T, N, decay::ZenoParams(tau_z));
        },
        "T"_a, "N"_a, "tau_z"_a);

    // --- first-measurement response -------------------------------------------
    py::class_<response::ResponseBreakdown>(m, "ResponseBreakdown")
        .def_readonly("piece1", &response::ResponseBreakdown::piece1)
        .def_readonly("piece2", &response::ResponseBreakdown::piece2)
        .def_readonly("renormalized", &response::ResponseBreakdown::renormalized)
        .def_readonly("linear_coeff", &response::ResponseBreakdown::linear_coeff)
        .def_readonly("quadratic_coeff", &response::ResponseBreakdown::quadratic_coeff);
    m.def("f1_piece", &response::f1_piece, "E"_a, "delta_tau"_a);
    m.def("f2_piece", &response::f2_piece, "E"_a, "delta_tau"_a, "epsilon"_a);
    m.def("response_renormalized", &response::response_renormalized, "E"_a, "delta_tau"_a);
    m.def("response_renormalized_value", &response::response_renormalized_value, "E"_a, "delta_tau"_a);
    m.def(
        "decay_probability_first",
        [](double E, double sigma, double dt) {
            const auto p = response::decay_probability_first(response::QubitFieldParams(E, sigma), dt);
            return py::make_tuple(p.value, p.validity_warning);
        },
        "E"_a, "sigma"_a, "delta_tau"_a, "returns (probability, validity_warning)");

    // --- second-measurement response -------------------------------------------
    py::class_<flatband::SecondResponseBreakdown>(m, "SecondResponseBreakdown")
        .def_readonly("base_vacuum", &flatband::SecondResponseBreakdown::base_vacuum)
        .def_readonly("vacuum_part", &flatband::SecondResponseBreakdown::vacuum_part)
        .def_readonly("shifted_plus", &flatband::SecondResponseBreakdown::shifted_plus)
        .def_readonly("shifted_minus", &flatband::SecondResponseBreakdown::shifted_minus)
        .def_readonly("pv_part", &flatband::SecondResponseBreakdown::pv_part)
        .def_readonly("total", &flatband::SecondResponseBreakdown::total);
    m.def("flat_band_kernel", &flatband::flat_band_kernel, "xi"_a, "a"_a);
    m.def("flat_band_kernel_direct", &flatband::flat_band_kernel_direct, "xi"_a, "a"_a);
    m.def("band_overlap_integral", &flatband::band_overlap_integral, "E"_a, "a"_a, "delta_tau"_a);
    m.def("pv_piece", &flatband::pv_piece, "E"_a, "a"_a, "delta_tau"_a);
    m.def(
        "response_second_total",
        [](double E, double a, double density, double dt, double eps, bool printed_kernel) {
            return flatband::response_second_total(
                E, flatband::FieldState::flat_band(a, density), dt, eps,
                printed_kernel ? flatband::KernelConvention::PrintedClosedForm
                               : flatband::KernelConvention::OracleAntiderivative);
        },
        "E"_a, "a"_a, "density"_a, "delta_tau"_a, "epsilon"_a, "printed_kernel"_a = true);
    m.def("small_time_coeff_p", &flatband::small_time_coeff_p, "E"_a, "a"_a);
    m.def("small_time_coeff_q", &flatband::small_time_coeff_q, "E"_a, "a"_a);
    m.def(
        "response_second_small_time",
        [](double E, double a, double dt) {
            const auto r = flatband::response_second_small_time(E, a, dt);
            return py::make_tuple(r.value, r.validity_warning);
        },
        "E"_a, "a"_a, "delta_tau"_a, "returns (value, validity_warning)");

    // --- pipeline ---------------------------------------------------------------
    m.def(
        "survival_after_n",
        [](double E, double sigma, double a, double T, std::uint64_t N) {
            return zeno::survival_after_n(response::QubitFieldParams(E, sigma),
                                          flatband::FieldState::flat_band(a),
                                          decay::MeasurementSchedule(T, N));
        },
        "E"_a, "sigma"_a, "a"_a, "T"_a, "N"_a);
    m.def(
        "survival_continuous_limit",
        [](double E, double sigma, double a, double T, const py::object& N) {
            return zeno::survival_continuous_limit(response::QubitFieldParams(E, sigma), a, T,
                                                   count_from_object(N));
        },
        "E"_a, "sigma"_a, "a"_a, "T"_a, "N"_a, "N may be an int or float('inf')");
    m.def("landau_peierls_max_n", &zeno::landau_peierls_max_n, "T"_a, "E"_a);
    m.def(
        "classical_curve",
        [](double tau_E, double T, std::size_t points) {
            zeno::CurveSpec spec;
            spec.law = zeno::LawTag::Classical;
            spec.tau_E = tau_E;
            spec.T = T;
            spec.num_points = points;
            return zeno::make_survival_curve(spec).points;
        },
        "tau_E"_a, "T"_a, "points"_a);

    // --- verification -------------------------------------------------------------
    m.def(
        "run_verification",
        [](const py::object& tol) {
            verify::VerifyOptions options;
            if (!tol.is_none()) options.tol_override = tol.cast<double>();
            const auto report = verify::run_verification(options);
            py::list entries;
            for (const auto& e : report.entries) {
                py::dict d;
                d["formula_id"] = e.formula_id;
                d["paper_anchor"] = e.anchor;
                d["closed_form"] = e.closed_form;
                d["oracle"] = e.oracle;
                d["abs_diff"] = e.abs_diff;
                d["tolerance"] = e.tolerance;
                d["verdict"] = verify::to_string(e.verdict);
                entries.append(std::move(d));
            }
            return entries;
        },
        "tol"_a = py::none());

    py::register_exception<domain_error>(m, "DomainError", PyExc_ValueError);
    py::register_exception<convergence_error>(m, "ConvergenceError", PyExc_RuntimeError);
    py::register_exception<contract_error>(m, "ContractError", PyExc_RuntimeError);
    py::register_exception<perturbation_error>(m, "PerturbationError", PyExc_RuntimeError);
}
