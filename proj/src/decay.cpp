// SPDX-License-Identifier: Apache-2.0
#include "qzeno/decay.hpp"

#include <cmath>

#include "qzeno/errors.hpp"

namespace qzeno::decay {

ClassicalDecayParams::ClassicalDecayParams(double tau_E_) : tau_E(tau_E_)
{
    if (!(std::isfinite(tau_E) && tau_E > 0.0))
        throw domain_error("ClassicalDecayParams: lifetime must be positive and finite");
}

ZenoParams::ZenoParams(double tau_z_) : tau_z(tau_z_)
{
    if (!(std::isfinite(tau_z) && tau_z > 0.0))
        throw domain_error("ZenoParams: Zeno time must be positive and finite");
}

ZenoParams zeno_params_from_moments(double h_mean, double h2_mean)
{
    const double variance = h2_mean - h_mean * h_mean;
    if (!(variance > 0.0))
        throw domain_error("zeno_params_from_moments: requires <H^2> > <H>^2");
    return ZenoParams(1.0 / std::sqrt(variance));
}

MeasurementSchedule::MeasurementSchedule(double T_, std::uint64_t N_) : T(T_), N(N_)
{
    if (!(std::isfinite(T) && T > 0.0)) throw domain_error("MeasurementSchedule: T must be positive");
    if (N < 1) throw domain_error("MeasurementSchedule: N must be >= 1");
}

double classical_survival(double t, const ClassicalDecayParams& params)
{
    if (!(t >= 0.0)) throw domain_error("classical_survival: time must be >= 0");
    return std::exp(-t / params.tau_E);
}

double classical_population(double t, double N0, const ClassicalDecayParams& params)
{
    if (!(t >= 0.0)) throw domain_error("classical_population: time must be >= 0");
    if (!(N0 > 0.0)) throw domain_error("classical_population: N0 must be positive");
    return N0 * std::exp(-t / params.tau_E);
}

double quantum_short_time_survival(double t, const ZenoParams& params)
{
    if (!(t >= 0.0)) throw domain_error("quantum_short_time_survival: time must be >= 0");
    const double r = t / params.tau_z;
    const double p = 1.0 - r * r;
    return p > 0.0 ? p : 0.0;
}

double repeated_survival(const MeasurementSchedule& schedule,
                         const std::function<double(double)>& single_interval_survival)
{
    const double p = single_interval_survival(schedule.delta_tau());
    if (!(p >= 0.0 && p <= 1.0))
        throw contract_error("repeated_survival: single-interval law returned a value outside [0, 1]");
    return std::pow(p, static_cast<double>(schedule.N));
}

double gaussian_zeno_limit(const MeasurementSchedule& schedule, const ZenoParams& params)
{
    return gaussian_zeno_limit(schedule.T, schedule.N, params);
}

double gaussian_zeno_limit(double T, std::uint64_t N, const ZenoParams& params)
{
    if (!(T >= 0.0)) throw domain_error("gaussian_zeno_limit: T must be >= 0");
    if (N < 1) throw domain_error("gaussian_zeno_limit: N must be >= 1");
    const double r = T / params.tau_z;
    return std::exp(-r * r / static_cast<double>(N));
}

} // namespace qzeno::decay
