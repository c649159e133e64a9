// SPDX-License-Identifier: Apache-2.0
#include "qzeno/response_first.hpp"

#include <cmath>

#include "qzeno/errors.hpp"
#include "qzeno/quadrature.hpp"
#include "qzeno/specfun.hpp"

namespace qzeno::response {

namespace {
constexpr double kTwoPiSq = 2.0 * M_PI * M_PI;
}

QubitFieldParams::QubitFieldParams(double E_, double sigma_) : E(E_), sigma(sigma_)
{
    if (!(std::isfinite(E) && E != 0.0))
        throw domain_error("QubitFieldParams: transition energy must be finite and nonzero");
    if (!(std::isfinite(sigma) && sigma >= 0.0))
        throw domain_error("QubitFieldParams: coupling must be finite and >= 0");
}

double f1_piece(double E, double delta_tau)
{
    if (!(delta_tau > 0.0)) throw domain_error("f1_piece: delta_tau must be positive");
    const double x = std::abs(E) * delta_tau;
    const double si = specfun::sin_integral(x).value;
    // (dt/2pi)[-E H(-E) + cos(E dt)/(pi dt) + (|E|/pi)(Si x - pi/2)], written
    // with the dt factors multiplied through so the dt -> 0 limit is explicit.
    return (-E * specfun::heaviside(-E) * M_PI * delta_tau + std::cos(x)
            + x * (si - M_PI_2))
           / kTwoPiSq;
}

double f2_piece(double E, double delta_tau, double epsilon)
{
    if (E == 0.0) throw domain_error("f2_piece: E must be nonzero");
    if (!(delta_tau > 0.0)) throw domain_error("f2_piece: delta_tau must be positive");
    if (!(epsilon > 0.0)) throw domain_error("f2_piece: epsilon must be positive");
    const double x = std::abs(E) * delta_tau;
    const double ci = specfun::cos_integral(x).value;
    return (-specfun::euler_gamma + ci - std::log(epsilon * std::abs(E)) - 1.0) / kTwoPiSq;
}

double first_response_regulated(double E, double delta_tau, double epsilon)
{
    if (!(delta_tau > 0.0)) throw domain_error("first_response_regulated: delta_tau must be positive");
    if (!(epsilon > 0.0)) throw domain_error("first_response_regulated: epsilon must be positive");
    const double x = std::abs(E) * delta_tau;
    const double si = specfun::sin_integral(x).value;
    const double deficit = specfun::cos_deficit_integral(x).value;
    return (-E * specfun::heaviside(-E) * M_PI * delta_tau + std::cos(x) + x * (si - M_PI_2)
            + std::log(delta_tau / epsilon) + deficit - 1.0)
           / kTwoPiSq;
}

double renormalized_piecewise(double E, double delta_tau)
{
    if (!(delta_tau >= 0.0)) throw domain_error("renormalized_piecewise: delta_tau must be >= 0");
    if (delta_tau == 0.0) return 0.0;
    const double x = std::abs(E) * delta_tau;
    const double si = specfun::sin_integral(x).value;
    const double deficit = specfun::cos_deficit_integral(x).value;
    return (-E * specfun::heaviside(-E) * M_PI * delta_tau + std::cos(x) + x * (si - M_PI_2)
            + deficit - 1.0)
           / kTwoPiSq;
}

double response_renormalized_value(double E, double delta_tau)
{
    if (!(delta_tau >= 0.0)) throw domain_error("response_renormalized_value: delta_tau must be >= 0");
    const double x = std::abs(E) * delta_tau; // even in E by construction
    if (x == 0.0) return 0.0;
    const double si = specfun::sin_integral(x).value;
    const double deficit = specfun::cos_deficit_integral(x).value;
    return (x * (M_PI_2 + si) + std::cos(x) - 1.0 + deficit) / kTwoPiSq;
}

ResponseBreakdown response_renormalized(double E, double delta_tau)
{
    if (E == 0.0) throw domain_error("response_renormalized: E must be nonzero");
    if (!(delta_tau >= 0.0)) throw domain_error("response_renormalized: delta_tau must be >= 0");
    const double x = std::abs(E) * delta_tau;
    const double si = specfun::sin_integral(x).value;
    const double deficit = specfun::cos_deficit_integral(x).value;

    ResponseBreakdown out;
    out.piece1 = (-E * specfun::heaviside(-E) * M_PI * delta_tau + std::cos(x)
                  + x * (si - M_PI_2))
                 / kTwoPiSq;
    out.piece2 = (deficit - 1.0) / kTwoPiSq;
    out.renormalized = (x * (M_PI_2 + si) + std::cos(x) - 1.0 + deficit) / kTwoPiSq;
    out.linear_coeff = std::abs(E) / (4.0 * M_PI);
    out.quadratic_coeff = E * E / (8.0 * M_PI * M_PI);
    return out;
}

DecayProbability decay_probability_first(const QubitFieldParams& params, double delta_tau)
{
    const double p = params.sigma * response_renormalized_value(params.E, delta_tau);
    if (p > 1.0)
        throw perturbation_error("decay_probability_first: first-order probability exceeds 1");
    return {p, p > 0.1};
}

double survival_first(const QubitFieldParams& params, double delta_tau)
{
    return 1.0 - decay_probability_first(params, delta_tau).value;
}

double continuum_decay_probability(const std::function<double(double)>& rho,
                                   const std::function<double(double)>& sigma_of,
                                   double omega_c, double omega_e, double omega_max,
                                   double delta_tau, double tol, double tail_estimate)
{
    if (!(omega_max > omega_c)) throw domain_error("continuum_decay_probability: omega_max must exceed omega_c");
    if (!(delta_tau >= 0.0)) throw domain_error("continuum_decay_probability: delta_tau must be >= 0");
    auto integrand = [&](double w) {
        return rho(w) * sigma_of(w) * response_renormalized_value(w - omega_e, delta_tau);
    };
    quad::IntegrateOptions opt;
    opt.tol = tol;
    opt.max_panels = 40000;
    const quad::QuadratureResult r = quad::integrate(integrand, omega_c, omega_max, opt);
    return r.value + tail_estimate;
}

} // namespace qzeno::response
