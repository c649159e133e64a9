// SPDX-License-Identifier: Apache-2.0
#include "qzeno/verify.hpp"

#include <cmath>
#include <functional>
#include <initializer_list>
#include <limits>
#include <sstream>
#include <tuple>
#include <utility>

#include "qzeno/format.hpp"
#include "qzeno/quadrature.hpp"
#include "qzeno/response_first.hpp"
#include "qzeno/response_second.hpp"
#include "qzeno/specfun.hpp"

namespace qzeno::verify {

namespace {

constexpr double kQuadTol = 1e-11;
constexpr double kTwoPiSq = 2.0 * M_PI * M_PI;

std::string point_id(const char* base, std::initializer_list<std::pair<const char*, double>> params)
{
    std::ostringstream os;
    os << base << '[';
    bool first = true;
    for (const auto& [name, value] : params) {
        if (!first) os << ',';
        os << name << '=' << format_double(value);
        first = false;
    }
    os << ']';
    return os.str();
}

class Registry {
  public:
    explicit Registry(const VerifyOptions& options) : options_(options) {}

    /// Evaluate closed() and oracle() under exception protection and append
    /// the comparison.  Any exception becomes a Flag entry with a NaN side.
    void add(std::string id, std::string anchor, double tolerance,
             const std::function<double()>& closed, const std::function<double()>& oracle)
    {
        ReportEntry e;
        e.formula_id = std::move(id);
        e.anchor = std::move(anchor);
        e.tolerance = options_.tol_override.value_or(tolerance);
        e.closed_form = protected_eval(closed);
        e.oracle = protected_eval(oracle);
        e.abs_diff = std::abs(e.closed_form - e.oracle);
        e.verdict = (e.abs_diff <= e.tolerance) ? Verdict::Pass : Verdict::Flag;
        entries_.push_back(std::move(e));
    }

    std::vector<ReportEntry> take() { return std::move(entries_); }

  private:
    static double protected_eval(const std::function<double()>& f)
    {
        try {
            return f();
        } catch (...) {
            return std::numeric_limits<double>::quiet_NaN();
        }
    }

    VerifyOptions options_;
    std::vector<ReportEntry> entries_;
};

// --- oracle helpers ---------------------------------------------------------

// The sharp regulator peak carries integrand mass ~ dt/eps, so the rounding
// floor of the quadrature grows as the sweep descends; keep the requested
// tolerance feasible.
double feasible_tol(double dt, double eps)
{
    return std::max(kQuadTol, 1e-14 * dt / eps);
}

// Full regulated response swept over regulators one decade finer than the
// general-purpose default (the eps^2 term the fit basis omits is the
// accuracy limit here), counterterm (1/2 pi^2) ln(dt/eps) removed,
// extrapolated to eps -> 0.
double renormalized_response_oracle(double E, double dt)
{
    quad::RegulatorSweep sweep;
    for (double scale : {3e-3, 1e-3, 3e-4, 1e-4, 3e-5}) sweep.epsilons.push_back(scale * dt);
    for (double eps : sweep.epsilons)
        sweep.values.push_back(
            quad::response_double_integral(E, dt, eps, feasible_tol(dt, eps)).value);
    auto counterterm = [dt](double eps) { return std::log(dt / eps) / kTwoPiSq; };
    return quad::extrapolate_regulator(sweep, counterterm);
}

// Constant-weight piece: finite eps -> 0 limit, no counterterm.
double window_piece_oracle(double E, double dt)
{
    quad::RegulatorSweep sweep;
    sweep.epsilons = quad::default_epsilon_sweep(dt);
    for (double eps : sweep.epsilons)
        sweep.values.push_back(quad::response_window_integral(E, dt, eps, kQuadTol).value);
    return quad::extrapolate_regulator(sweep, [](double) { return 0.0; });
}

// Cusp-weight piece: divergence -(1/2 pi^2) ln(eps); the comparable closed
// value is f2 with the same subtraction, which is epsilon-free.
double cusp_piece_oracle(double E, double dt)
{
    quad::RegulatorSweep sweep;
    sweep.epsilons = quad::default_epsilon_sweep(dt);
    for (double eps : sweep.epsilons)
        sweep.values.push_back(quad::response_cusp_integral(E, dt, eps, kQuadTol).value);
    auto counterterm = [](double eps) { return -std::log(eps) / kTwoPiSq; };
    return quad::extrapolate_regulator(sweep, counterterm);
}

double cusp_piece_closed_subtracted(double E, double dt)
{
    // f2(eps) + (1/2 pi^2) ln(eps) = (1/2 pi^2)(-gamma + Ci(|E| dt) - ln|E| - 1)
    const double x = std::abs(E) * dt;
    return (-specfun::euler_gamma + specfun::cos_integral(x).value - std::log(std::abs(E)) - 1.0)
           / kTwoPiSq;
}

// Direct quadrature of the odd-kernel piece at eps -> 0:
//   -(a / 2 pi^2) int_0^dt (dt - xi) sin(a xi) cos(E xi) / xi dxi
// (smooth integrand, removable at the origin).
double pv_piece_direct(double E, double a, double dt)
{
    auto integrand = [=](double xi) {
        return (dt - xi) * std::sin(a * xi) * std::cos(E * xi) / xi;
    };
    quad::IntegrateOptions opt;
    opt.tol = 1e-12;
    opt.initial_panels = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::ceil((std::abs(E) + a) * dt / M_PI)));
    return -a / kTwoPiSq * quad::integrate(integrand, 0.0, dt, opt).value;
}

double band_overlap_quadrature(double E, double a, double dt)
{
    auto integrand = [=](double xi) { return std::sin(a * xi) * std::cos(E * xi); };
    quad::IntegrateOptions opt;
    opt.tol = 1e-12;
    opt.initial_panels = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::ceil((std::abs(E) + a) * dt / M_PI)));
    return quad::integrate(integrand, 0.0, dt, opt).value;
}

// Richardson-extrapolated linear coefficient of f at dt -> 0, assuming
// f(dt) = c1 dt + c2 dt^2 + c4 dt^4 + ... (no cubic term).
double fitted_linear_coeff(const std::function<double(double)>& f, double h)
{
    auto d = [&f](double s) { return f(s) / s; };
    const double r1a = 2.0 * d(h / 2) - d(h);
    const double r1b = 2.0 * d(h / 4) - d(h / 2);
    return (8.0 * r1b - r1a) / 7.0;
}

double fitted_quadratic_coeff(const std::function<double(double)>& f, double c1, double h)
{
    auto e = [&](double s) { return (f(s) - c1 * s) / (s * s); };
    return (4.0 * e(h / 2) - e(h)) / 3.0;
}

} // namespace

bool VerificationReport::has_flags() const
{
    return flag_count() > 0;
}

std::size_t VerificationReport::flag_count() const
{
    std::size_t n = 0;
    for (const auto& e : entries)
        if (e.verdict == Verdict::Flag) ++n;
    return n;
}

const char* to_string(Verdict v)
{
    return v == Verdict::Pass ? "PASS" : "FLAG";
}

VerificationReport run_verification(const VerifyOptions& options)
{
    Registry reg(options);

    // Constant-weight vacuum piece: closed form vs regulator-swept integral.
    for (const auto& [E, dt] : {std::pair{-1.0, 1.0}, std::pair{1.0, 0.7}, std::pair{-2.0, 0.5}}) {
        reg.add(point_id("first_response_piece1", {{"E", E}, {"dt", dt}}),
                "constant-weight vacuum piece, closed form vs regulated integral", 1e-4,
                [E = E, dt = dt] { return response::f1_piece(E, dt); },
                [E = E, dt = dt] { return window_piece_oracle(E, dt); });
    }

    // Cusp-weight vacuum piece, common log divergence removed on both sides.
    for (const auto& [E, dt] : {std::pair{-1.0, 1.0}, std::pair{1.5, 0.8}}) {
        reg.add(point_id("first_response_piece2", {{"E", E}, {"dt", dt}}),
                "cusp-weight vacuum piece, closed form vs regulated integral", 1e-4,
                [E = E, dt = dt] { return cusp_piece_closed_subtracted(E, dt); },
                [E = E, dt = dt] { return cusp_piece_oracle(E, dt); });
    }

    // Renormalized response: closed form vs extrapolated, counterterm-
    // subtracted integral.
    for (double E : {-0.5, -1.0, -2.0}) {
        for (double dt : {0.5, 1.0, 3.0}) {
            reg.add(point_id("first_response_renormalized", {{"E", E}, {"dt", dt}}),
                    "renormalized response, closed form vs extrapolated integral", 1e-4,
                    [E, dt] { return response::response_renormalized_value(E, dt); },
                    [E, dt] { return renormalized_response_oracle(E, dt); });
        }
    }

    // Stated small-interval coefficients vs fits of the closed response.
    {
        const double E = -1.0;
        auto f = [E](double dt) { return response::response_renormalized_value(E, dt); };
        reg.add(point_id("small_time_linear", {{"E", E}}),
                "short-interval linear coefficient, stated vs fitted", 1e-6,
                [E] { return std::abs(E) / (4.0 * M_PI); },
                [f] { return fitted_linear_coeff(f, 0.02); });
        const double alpha = 0.5 - 3.0 / (2.0 * M_PI);
        reg.add(point_id("small_time_quadratic", {{"E", E}}),
                "short-interval quadratic coefficient, stated vs fitted", 1e-6,
                [E, alpha] { return alpha * E * E / (4.0 * M_PI); },
                [f] {
                    const double c1 = fitted_linear_coeff(f, 0.02);
                    return fitted_quadratic_coeff(f, c1, 0.02);
                });
    }

    // Band kernel: printed closed form vs spectral quadrature, 20 points.
    for (double a : {0.5, 1.0, 2.0, 3.5}) {
        for (double xi : {0.4, 1.1, M_PI, 2.0 * M_PI, 7.3}) {
            reg.add(point_id("flat_band_kernel", {{"xi", xi}, {"a", a}}),
                    "band kernel, printed form vs spectral quadrature", 1e-8,
                    [xi, a] { return flatband::flat_band_kernel(xi, a); },
                    [xi, a] { return quad::flat_band_kernel_oracle(xi, a, 1e-12).value; });
        }
    }

    // Energy-shifted vacuum piece (the second-measurement building block):
    // same subtraction and extrapolation as the renormalized response, at the
    // shifted energy.  The E + a = 0 point exercises the degenerate limit.
    for (const auto& [E, a, dt] : {std::tuple{-1.0, 2.0, 1.0}, std::tuple{-1.0, 1.0, 0.8}}) {
        const double shifted = E + a;
        reg.add(point_id("shifted_vacuum_piece", {{"E", E}, {"a", a}, {"dt", dt}}),
                "energy-shifted vacuum piece vs regulated integral", 1e-4,
                [shifted, dt = dt] { return response::renormalized_piecewise(shifted, dt); },
                [shifted, dt = dt] { return renormalized_response_oracle(shifted, dt); });
    }

    // Odd-kernel piece: the printed principal-value form vs direct quadrature
    // of its defining integral.
    for (const auto& [E, a, dt] : {std::tuple{-1.0, 1.0, 0.5}, std::tuple{-2.0, 0.7, 1.3}}) {
        reg.add(point_id("pv_piece", {{"E", E}, {"a", a}, {"dt", dt}}),
                "odd-kernel piece, principal-value form vs direct quadrature", 1e-8,
                [E = E, a = a, dt = dt] { return flatband::pv_piece(E, a, dt); },
                [E = E, a = a, dt = dt] { return pv_piece_direct(E, a, dt); });
    }

    // Elementary sin*cos window integral: closed form vs quadrature.
    for (const auto& [E, a, dt] : {std::tuple{1.0, 2.0, M_PI}, std::tuple{-1.3, 0.9, 1.7},
                                   std::tuple{-2.0, 2.0, 1.1}}) {
        reg.add(point_id("band_overlap_integral", {{"E", E}, {"a", a}, {"dt", dt}}),
                "sin*cos window integral, closed form vs quadrature", 1e-10,
                [E = E, a = a, dt = dt] { return flatband::band_overlap_integral(E, a, dt); },
                [E = E, a = a, dt = dt] { return band_overlap_quadrature(E, a, dt); });
    }

    // Printed branch values of p vs the one-line master formula.
    for (const auto& [E, a] : {std::pair{-1.0, 2.0}, std::pair{-3.0, 1.0}, std::pair{3.0, 1.0},
                               std::pair{-1.0, 1.0}}) {
        reg.add(point_id("coeff_p_master", {{"E", E}, {"a", a}}),
                "leading decay coefficient p, branch value vs master formula", 1e-12,
                [E = E, a = a] { return flatband::small_time_coeff_p(E, a); },
                [E = E, a = a] { return flatband::small_time_coeff_p_master(E, a); });
    }

    // The discontinuity of p at |E| = a: printed boundary value vs the two
    // side limits.
    {
        const double E = -1.0, a = 1.0;
        reg.add(point_id("coeff_p_boundary_below", {{"E", E}, {"a", a}}),
                "p at |E| = a vs limit of the |E| < a branch", 1e-12,
                [E, a] { return flatband::small_time_coeff_p(E, a); },
                [E, a] { return (3.0 * std::abs(E) + 4.0 * a) / (4.0 * M_PI); });
        reg.add(point_id("coeff_p_boundary_above", {{"E", E}, {"a", a}}),
                "p at |E| = a vs limit of the |E| > a branch", 1e-12,
                [E, a] { return flatband::small_time_coeff_p(E, a); },
                [E] { return 5.0 * std::abs(E) / (4.0 * M_PI); });
    }

    // Printed p and q vs coefficients fitted from the assembled, subtracted
    // second response.
    for (const auto& [E, a] : {std::pair{-1.0, 2.0}, std::pair{-3.0, 1.0}}) {
        auto f = [E = E, a = a](double dt) {
            return flatband::second_response_renormalized(E, a, 1.0, dt);
        };
        reg.add(point_id("coeff_p_derived", {{"E", E}, {"a", a}}),
                "leading decay coefficient p, printed vs fitted from assembly", 1e-6,
                [E = E, a = a] { return flatband::small_time_coeff_p(E, a); },
                [f] { return fitted_linear_coeff(f, 0.01); });
    }
    {
        const double E = -1.0, a = 1.0;
        reg.add(point_id("coeff_q_degenerate", {{"E", E}, {"a", a}}),
                "quadratic coefficient q, general vs |E| = a form", 1e-14,
                [E, a] { return flatband::small_time_coeff_q(E, a); },
                [E] { return flatband::small_time_coeff_q_degenerate(E); });
        auto f = [E, a](double dt) { return flatband::second_response_renormalized(E, a, 1.0, dt); };
        reg.add(point_id("coeff_q_derived", {{"E", E}, {"a", a}}),
                "quadratic coefficient q, printed vs fitted from assembly", 1e-6,
                [E, a] { return flatband::small_time_coeff_q(E, a); },
                [f] {
                    const double c1 = fitted_linear_coeff(f, 0.01);
                    return fitted_quadratic_coeff(f, c1, 0.01);
                });
    }

    VerificationReport report;
    report.entries = reg.take();
    return report;
}

} // namespace qzeno::verify
