// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>

namespace qzeno::decay {

/// Classical exponential decay with lifetime tau_E (rate Gamma = 1/tau_E),
/// natural time units.
struct ClassicalDecayParams {
    double tau_E;
    explicit ClassicalDecayParams(double tau_E_);
    double rate() const { return 1.0 / tau_E; }
};

/// Short-time Gaussian evolution scale (Zeno time), natural units.
struct ZenoParams {
    double tau_z;
    explicit ZenoParams(double tau_z_);
};

/// Zeno time from the first two Hamiltonian moments of the initial state:
/// tau_z = (<H^2> - <H>^2)^{-1/2}.  Requires h2_mean > h_mean^2.
ZenoParams zeno_params_from_moments(double h_mean, double h2_mean);

/// N equally spaced instantaneous measurements over total time T.
struct MeasurementSchedule {
    double T;
    std::uint64_t N;
    MeasurementSchedule(double T_, std::uint64_t N_);
    double delta_tau() const { return T / static_cast<double>(N); }
};

/// exp(-t / tau_E), the memoryless non-decay probability.
double classical_survival(double t, const ClassicalDecayParams& params);

/// N0 * exp(-t / tau_E).
double classical_population(double t, double N0, const ClassicalDecayParams& params);

/// Truncated quadratic short-time law max(0, 1 - t^2 / tau_z^2); the clamp
/// keeps downstream product laws inside [0, 1].
double quantum_short_time_survival(double t, const ZenoParams& params);

/// [P(T/N)]^N for a caller-supplied single-interval survival law P.
/// Throws contract_error if P returns a value outside [0, 1].
double repeated_survival(const MeasurementSchedule& schedule,
                         const std::function<double(double)>& single_interval_survival);

/// exp(-T^2 / (tau_z^2 N)), the large-N form of the Gaussian product law.
double gaussian_zeno_limit(const MeasurementSchedule& schedule, const ZenoParams& params);

/// Same law for T >= 0 without constructing a schedule (T = 0 gives 1).
double gaussian_zeno_limit(double T, std::uint64_t N, const ZenoParams& params);

} // namespace qzeno::decay
