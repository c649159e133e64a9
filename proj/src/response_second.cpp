// SPDX-License-Identifier: Apache-2.0
#include "qzeno/response_second.hpp"

#include <cmath>

#include "qzeno/errors.hpp"
#include "qzeno/quadrature.hpp"
#include "qzeno/response_first.hpp"
#include "qzeno/specfun.hpp"

namespace qzeno::flatband {

namespace {
constexpr double kDegenerateRel = 1e-9;

bool near_degenerate(double E, double a)
{
    return std::abs(std::abs(E) - a) < kDegenerateRel * std::max(std::abs(E), a);
}
} // namespace

FieldState FieldState::vacuum()
{
    return {Kind::Vacuum, 0.0, 0.0};
}

FieldState FieldState::flat_band(double a, double density)
{
    if (!(std::isfinite(a) && a > 0.0)) throw domain_error("FieldState: band cutoff must be positive");
    if (!(std::isfinite(density) && density >= 0.0))
        throw domain_error("FieldState: occupation density must be >= 0");
    return {Kind::FlatBand, a, density};
}

double flat_band_kernel(double xi, double a)
{
    if (xi == 0.0) throw domain_error("flat_band_kernel: xi must be nonzero");
    if (!(a > 0.0)) throw domain_error("flat_band_kernel: band cutoff must be positive");
    const double x2 = xi * xi;
    return -2.0 / x2 - 2.0 * std::cos(a * xi) / x2 - (2.0 * a / xi) * std::sin(a * xi);
}

double flat_band_kernel_direct(double xi, double a)
{
    if (!(a > 0.0)) throw domain_error("flat_band_kernel_direct: band cutoff must be positive");
    const double ax = a * xi;
    if (std::abs(ax) < 1e-4) {
        // series of 2[a sin(a xi)/xi + (cos(a xi) - 1)/xi^2] about xi = 0
        return a * a * (1.0 - ax * ax / 4.0 + ax * ax * ax * ax / 72.0);
    }
    return 2.0 * (a * std::sin(ax) / xi + (std::cos(ax) - 1.0) / (xi * xi));
}

double shifted_vacuum_piece(double E, double a_shift, double delta_tau, double epsilon)
{
    return response::first_response_regulated(E + a_shift, delta_tau, epsilon);
}

double band_overlap_integral(double E, double a, double delta_tau)
{
    if (!(a > 0.0)) throw domain_error("band_overlap_integral: band cutoff must be positive");
    if (!(delta_tau >= 0.0)) throw domain_error("band_overlap_integral: delta_tau must be >= 0");
    if (near_degenerate(E, a)) return (1.0 - std::cos(2.0 * a * delta_tau)) / (4.0 * a);
    const double m = E - a;
    const double p = E + a;
    return (std::cos(m * delta_tau) - 1.0) / (2.0 * m) - (std::cos(p * delta_tau) - 1.0) / (2.0 * p);
}

double pv_piece(double E, double a, double delta_tau)
{
    if (!(a > 0.0)) throw domain_error("pv_piece: band cutoff must be positive");
    if (!(delta_tau > 0.0)) throw domain_error("pv_piece: delta_tau must be positive");

    // P int_{-dt}^{dt} e^{-i b xi} / xi dxi = -i int_{-dt}^{dt} sin(b xi)/xi dxi:
    // the cosine part is odd about the pole and cancels.
    auto sine_part = [delta_tau](double b) {
        auto f = [b](double xi) { return std::sin(b * xi) / xi; };
        return quad::principal_value(f, 0.0, -delta_tau, delta_tau, 1e-10).value;
    };
    const double s_minus = sine_part(E - a);
    const double s_plus = sine_part(E + a);

    return a * delta_tau / (8.0 * M_PI) * (s_minus - s_plus)
           + a / (2.0 * M_PI) * band_overlap_integral(E, a, delta_tau);
}

SecondResponseBreakdown response_second_total(double E, const FieldState& state, double delta_tau,
                                              double epsilon, KernelConvention convention)
{
    if (!(delta_tau > 0.0)) throw domain_error("response_second_total: delta_tau must be positive");
    if (!(epsilon > 0.0)) throw domain_error("response_second_total: epsilon must be positive");

    SecondResponseBreakdown out{};
    out.base_vacuum = response::first_response_regulated(E, delta_tau, epsilon);
    if (state.kind == FieldState::Kind::Vacuum || state.density == 0.0) {
        out.total = out.base_vacuum;
        return out;
    }

    const double a = state.a;
    const double n = state.density;
    out.vacuum_part = 2.0 * n * out.base_vacuum;

    if (convention == KernelConvention::PrintedClosedForm) {
        out.shifted_plus = n * shifted_vacuum_piece(E, a, delta_tau, epsilon);
        out.shifted_minus = n * shifted_vacuum_piece(E, -a, delta_tau, epsilon);
        out.pv_part = n * pv_piece(E, a, delta_tau);
    } else {
        // Antiderivative kernel: the cosine and sine terms enter with the
        // opposite sign relative to the printed form, and the sine piece has
        // twice the printed weight.
        out.shifted_plus = -n * shifted_vacuum_piece(E, a, delta_tau, epsilon);
        out.shifted_minus = -n * shifted_vacuum_piece(E, -a, delta_tau, epsilon);
        const double x_plus = (a + E) * delta_tau;
        const double x_minus = (a - E) * delta_tau;
        const double si_sum = specfun::sin_integral(x_plus).value + specfun::sin_integral(x_minus).value;
        out.pv_part = n * a / (M_PI * M_PI)
                      * (0.5 * delta_tau * si_sum - band_overlap_integral(E, a, delta_tau));
    }

    out.total = out.base_vacuum + out.vacuum_part + out.shifted_plus + out.shifted_minus + out.pv_part;
    return out;
}

double small_time_coeff_p(double E, double a)
{
    if (E == 0.0) throw domain_error("small_time_coeff_p: E must be nonzero");
    if (!(a > 0.0)) throw domain_error("small_time_coeff_p: band cutoff must be positive");
    const double absE = std::abs(E);
    if (absE < a) return (3.0 * absE + 4.0 * a) / (4.0 * M_PI);
    if (absE > a) return 5.0 * absE / (4.0 * M_PI);
    return absE / M_PI;
}

double small_time_coeff_p_master(double E, double a)
{
    if (E == 0.0) throw domain_error("small_time_coeff_p_master: E must be nonzero");
    if (!(a > 0.0)) throw domain_error("small_time_coeff_p_master: band cutoff must be positive");
    using specfun::heaviside;
    return (3.0 * std::abs(E) + std::abs(E + a) + std::abs(E - a) + a * heaviside(a - E)
            - a * heaviside(-E - a) + a * heaviside(E + a))
           / (4.0 * M_PI);
}

double small_time_coeff_q(double E, double a)
{
    if (E == 0.0) throw domain_error("small_time_coeff_q: E must be nonzero");
    if (!(a > 0.0)) throw domain_error("small_time_coeff_q: band cutoff must be positive");
    return (5.0 * E * E * (M_PI - 3.0) - 2.0 * a * a) / (8.0 * M_PI * M_PI);
}

double small_time_coeff_q_degenerate(double E)
{
    return (5.0 * M_PI - 17.0) * E * E / (8.0 * M_PI * M_PI);
}

SmallTimeResponse response_second_small_time(double E, double a, double delta_tau)
{
    if (!(delta_tau >= 0.0)) throw domain_error("response_second_small_time: delta_tau must be >= 0");
    const double p = small_time_coeff_p(E, a);
    const double q = small_time_coeff_q(E, a);
    const bool warn = std::abs(E) * delta_tau > 0.1 || a * delta_tau > 0.1;
    return {p * delta_tau + q * delta_tau * delta_tau, warn};
}

double second_response_renormalized(double E, double a, double density, double delta_tau)
{
    if (!(a > 0.0)) throw domain_error("second_response_renormalized: band cutoff must be positive");
    if (!(density >= 0.0)) throw domain_error("second_response_renormalized: density must be >= 0");
    if (!(delta_tau >= 0.0)) throw domain_error("second_response_renormalized: delta_tau must be >= 0");
    if (delta_tau == 0.0) return 0.0;

    using response::renormalized_piecewise;
    const double base = renormalized_piecewise(E, delta_tau);
    const double shifted = renormalized_piecewise(E + a, delta_tau) + renormalized_piecewise(E - a, delta_tau);

    // Closed form of the odd-kernel piece (identical in value to pv_piece,
    // which routes the same integrals through the principal-value oracle).
    const double x_minus = (E - a) * delta_tau;
    const double x_plus = (E + a) * delta_tau;
    const double f4 = a * delta_tau / (4.0 * M_PI)
                          * (specfun::sin_integral(x_minus).value - specfun::sin_integral(x_plus).value)
                      + a / (2.0 * M_PI) * band_overlap_integral(E, a, delta_tau);

    return base * (1.0 + 2.0 * density) + density * (shifted + f4);
}

} // namespace qzeno::flatband
