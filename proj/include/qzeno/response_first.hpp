// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>

namespace qzeno::response {

/// Two-level system coupled to the scalar field.  E is the transition energy
/// in natural units (E < 0: decay, E > 0: excitation); sigma is the effective
/// dimensionless coupling lambda^2 |<e|m|g>|^2.
struct QubitFieldParams {
    double E;
    double sigma;
    QubitFieldParams(double E_, double sigma_);
};

/// Pieces of the renormalized first-measurement response together with its
/// small-interval expansion coefficients.
///
/// piece1 is the constant-weight part of the regulated integral (regulator
/// free); piece2 is the cusp-weight part with its divergent logarithms
/// removed.  For E < 0 their sum equals `renormalized` identically; for
/// E > 0 the two routes differ by the vacuum term |E| dt / (2 pi) and the
/// verification report records the gap.
struct ResponseBreakdown {
    double piece1;
    double piece2;
    double renormalized;
    double linear_coeff;    // d F_ren / d dt at dt = 0, equals |E| / (4 pi)
    double quadratic_coeff; // half second derivative, equals E^2 / (8 pi^2)
};

/// Constant-weight piece of the response:
///   (dt / 2 pi) [ -E H(-E) + cos(E dt)/(pi dt) + (|E|/pi)(Si(|E| dt) - pi/2) ].
/// Finite epsilon -> 0 limit; requires dt > 0.
double f1_piece(double E, double delta_tau);

/// Cusp-weight piece at finite regulator epsilon:
///   (1 / 2 pi^2) [ -gamma + Ci(|E| dt) - ln(eps |E|) - 1 ].
/// Diverges logarithmically as eps -> 0; requires E != 0, dt > 0, eps > 0.
double f2_piece(double E, double delta_tau, double epsilon);

/// f1 + f2 combined algebraically so that the E -> 0 limit is finite:
///   (1/2 pi^2) [ -E H(-E) pi dt + cos(E dt) + |E| dt (Si(|E| dt) - pi/2)
///                + ln(dt/eps) + D(|E| dt) - 1 ],
/// with D the cosine-deficit integral.  Valid for any real E.
double first_response_regulated(double E, double delta_tau, double epsilon);

/// The regulated response with its ln(dt/eps) counterterm removed, keeping
/// the decay/excitation asymmetry of the constant-weight piece.  Equals the
/// closed renormalized form below for E < 0.
double renormalized_piecewise(double E, double delta_tau);

/// Closed renormalized response, even in E:
///   F_ren = (1/2 pi^2) [ x (pi/2 + Si x) + cos x - 1 + D(x) ],  x = |E| dt.
/// F_ren(E, 0) = 0; F_ren >= 0.
double response_renormalized_value(double E, double delta_tau);

/// Full breakdown at (E, dt); requires E != 0 and dt >= 0.
ResponseBreakdown response_renormalized(double E, double delta_tau);

struct DecayProbability {
    double value;
    /// True when value > 0.1: first-order perturbation theory is strained.
    bool validity_warning;
};

/// sigma * F_ren(E, dt).  Throws perturbation_error if the result exceeds 1.
DecayProbability decay_probability_first(const QubitFieldParams& params, double delta_tau);

/// Survival over one observation window, 1 - sigma * F_ren.
double survival_first(const QubitFieldParams& params, double delta_tau);

/// Transition probability to a continuum of final states:
///   int_{omega_c}^{omega_max} rho(w) sigma(w) F_ren(w - omega_e, dt) dw
/// evaluated by the adaptive integrator, plus the caller's estimate of the
/// truncated tail.  rho must be non-negative and decay fast enough for the
/// truncation to make sense.
double continuum_decay_probability(const std::function<double(double)>& rho,
                                   const std::function<double(double)>& sigma_of,
                                   double omega_c, double omega_e, double omega_max,
                                   double delta_tau, double tol, double tail_estimate = 0.0);

} // namespace qzeno::response
