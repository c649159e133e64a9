// SPDX-License-Identifier: Apache-2.0
#include "qzeno/zeno.hpp"

#include <cmath>

#include "qzeno/errors.hpp"

namespace qzeno::zeno {

ObservationCount ObservationCount::finite(std::uint64_t n)
{
    if (n < 1) throw domain_error("ObservationCount: need at least one measurement");
    return {n, false};
}

ObservationCount ObservationCount::infinity()
{
    return {0, true};
}

namespace {

double checked_interval_survival(double transition_probability, const char* what)
{
    const double p = 1.0 - transition_probability;
    if (!(p >= 0.0 && p <= 1.0)) throw perturbation_error(what);
    return p;
}

} // namespace

double survival_after_n(const response::QubitFieldParams& params,
                        const flatband::FieldState& state_after_first,
                        const decay::MeasurementSchedule& schedule)
{
    const double dt = schedule.delta_tau();
    const double first = checked_interval_survival(
        params.sigma * response::response_renormalized_value(params.E, dt),
        "survival_after_n: first-interval probability outside [0, 1]");

    if (state_after_first.kind == flatband::FieldState::Kind::Vacuum)
        return std::pow(first, static_cast<double>(schedule.N));

    const double later = checked_interval_survival(
        params.sigma * flatband::response_second_small_time(params.E, state_after_first.a, dt).value,
        "survival_after_n: later-interval probability outside [0, 1]");
    return first * std::pow(later, static_cast<double>(schedule.N - 1));
}

double survival_continuous_limit(const response::QubitFieldParams& params, double a, double T,
                                 ObservationCount N)
{
    if (!(T >= 0.0)) throw domain_error("survival_continuous_limit: T must be >= 0");
    const double p = flatband::small_time_coeff_p(params.E, a);
    const double q = flatband::small_time_coeff_q(params.E, a);
    const double rate = params.sigma * p;
    if (N.is_infinite) {
        // The pure exponential: identical to the classical law with
        // lifetime tau_c = 1 / (sigma p).
        if (rate == 0.0) return 1.0;
        return decay::classical_survival(T, decay::ClassicalDecayParams(1.0 / rate));
    }
    return std::exp(-rate * T - params.sigma * q * T * T / static_cast<double>(N.n));
}

std::uint64_t landau_peierls_max_n(double T, double E)
{
    if (!(T > 0.0)) throw domain_error("landau_peierls_max_n: T must be positive");
    if (E == 0.0) throw domain_error("landau_peierls_max_n: E must be nonzero");
    const double bound = T * std::abs(E);
    if (bound <= 1.0) return 0;
    const double c = std::ceil(bound);
    // strict inequality N < T|E|
    const double n = (c == bound) ? bound - 1.0 : c - 1.0;
    return static_cast<std::uint64_t>(n);
}

namespace {

double curve_value(const CurveSpec& spec, double t)
{
    if (t == 0.0) return 1.0;
    switch (spec.law) {
        case LawTag::Classical:
            return decay::classical_survival(t, decay::ClassicalDecayParams(spec.tau_E));
        case LawTag::GaussianZeno: {
            if (spec.N.is_infinite) return 1.0;
            return decay::gaussian_zeno_limit(t, spec.N.n, decay::ZenoParams(spec.tau_z));
        }
        case LawTag::FirstOrderVacuum: {
            const response::QubitFieldParams qp(spec.E, spec.sigma);
            return response::survival_first(qp, t);
        }
        case LawTag::FlatBandSequence: {
            if (spec.N.is_infinite)
                throw domain_error("make_survival_curve: the product law needs a finite N");
            const response::QubitFieldParams qp(spec.E, spec.sigma);
            std::uint64_t n = spec.N.n;
            if (spec.landau_peierls) {
                const std::uint64_t cap = landau_peierls_max_n(t, spec.E);
                n = std::min(n, std::max<std::uint64_t>(1, cap));
            }
            return survival_after_n(qp, flatband::FieldState::flat_band(spec.a),
                                    decay::MeasurementSchedule(t, n));
        }
        case LawTag::ContinuousLimit: {
            const response::QubitFieldParams qp(spec.E, spec.sigma);
            ObservationCount n = spec.N;
            if (spec.landau_peierls && !n.is_infinite) {
                const std::uint64_t cap = landau_peierls_max_n(t, spec.E);
                n = ObservationCount::finite(std::min(n.n, std::max<std::uint64_t>(1, cap)));
            }
            return survival_continuous_limit(qp, spec.a, t, n);
        }
    }
    throw domain_error("make_survival_curve: unknown law");
}

} // namespace

SurvivalCurve make_survival_curve(const CurveSpec& spec)
{
    if (spec.num_points < 2) throw domain_error("make_survival_curve: need at least 2 points");
    if (!(spec.T > 0.0)) throw domain_error("make_survival_curve: T must be positive");

    SurvivalCurve curve;
    curve.law = spec.law;
    curve.T = spec.T;
    curve.N = spec.N;
    curve.points.reserve(spec.num_points);
    for (std::size_t i = 0; i < spec.num_points; ++i) {
        const double t = spec.T * static_cast<double>(i) / static_cast<double>(spec.num_points - 1);
        curve.points.emplace_back(t, curve_value(spec, t));
    }
    return curve;
}

LandauPeierlsComparison landau_peierls_comparison(const CurveSpec& spec)
{
    CurveSpec capped = spec;
    capped.landau_peierls = true;

    CurveSpec limit = spec;
    limit.landau_peierls = false;
    limit.N = ObservationCount::infinity();
    limit.law = LawTag::ContinuousLimit;

    LandauPeierlsComparison out{make_survival_curve(capped), make_survival_curve(limit), 0.0};
    for (std::size_t i = 0; i < out.capped.points.size(); ++i) {
        const double d = std::abs(out.capped.points[i].second - out.exponential.points[i].second);
        if (d > out.max_abs_diff) out.max_abs_diff = d;
    }
    return out;
}

} // namespace qzeno::zeno
