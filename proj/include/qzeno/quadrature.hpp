// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

namespace qzeno::quad {

struct QuadratureResult {
    double value;
    double est_abs_error;
    std::size_t subdivisions;
};

struct IntegrateOptions {
    double tol = 1e-10;
    std::size_t max_panels = 20000;
    /// Pre-split [a, b] into this many equal panels before refinement.
    /// Useful for strongly oscillatory integrands (one panel per half period).
    std::size_t initial_panels = 1;
};

/// Adaptive Gauss-Kronrod (7, 15) quadrature of f over [a, b].
/// Deterministic for fixed inputs: worst-panel-first refinement with a fixed
/// tie-break, final summation in left-to-right panel order.
/// Throws convergence_error (carrying the best estimate) if the panel budget
/// is exhausted before the requested tolerance is met.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const IntegrateOptions& opt);
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b, double tol);

/// Cauchy principal value of int_a^b f with a simple pole at `singularity`,
/// a < singularity < b.  Computed as the symmetric-excision limit by pairing
/// nodes: int_0^h [f(s+u) + f(s-u)] du plus the un-paired remainder.
QuadratureResult principal_value(const std::function<double(double)>& f, double singularity,
                                 double a, double b, double tol);

/// Real part of the regulated response integral
///   -(1/4 pi^2) int_{-dt}^{dt} (dt - |xi|) e^{-i E xi} / (xi - i eps)^2 dxi
/// at finite regulator eps, with the complex integrand expanded into explicit
/// real and imaginary parts before integration (the imaginary part vanishes
/// by parity).  Requires eps < dt/10.
QuadratureResult response_double_integral(double E, double delta_tau, double epsilon, double tol);

/// Constant-weight part of the same integral (weight dt instead of dt - |xi|).
QuadratureResult response_window_integral(double E, double delta_tau, double epsilon, double tol);

/// Cusp-weight part, +(1/4 pi^2) int |xi| e^{-i E xi} / (xi - i eps)^2 dxi.
QuadratureResult response_cusp_integral(double E, double delta_tau, double epsilon, double tol);

/// Spectral-integral evaluation of the flat-band kernel:
///   g(xi) = int_0^a w (e^{i w xi} + e^{-i w xi}) dw = 2 int_0^a w cos(w xi) dw
/// for a constant occupation density of 1 on [0, a].
QuadratureResult flat_band_kernel_oracle(double xi, double a, double tol);

/// Values of a regulator-dependent quantity along a decreasing sweep of
/// epsilons, and the epsilon -> 0 extrapolation once computed.
struct RegulatorSweep {
    std::vector<double> epsilons; // strictly decreasing, all > 0
    std::vector<double> values;   // same length as epsilons
    double extrapolated = std::numeric_limits<double>::quiet_NaN();
};

/// Default sweep {1e-2, 3e-3, 1e-3, 3e-4, 1e-4} * delta_tau.
std::vector<double> default_epsilon_sweep(double delta_tau);

/// Subtracts counterterm(eps) from each sweep value, fits the remainder
/// against {1, eps, eps ln eps} by least squares and returns the eps -> 0
/// intercept (also stored in sweep.extrapolated).  Throws convergence_error
/// if the fit residual exceeds residual_tol.
double extrapolate_regulator(RegulatorSweep& sweep, const std::function<double(double)>& counterterm,
                             double residual_tol = 1e-4);

} // namespace qzeno::quad
