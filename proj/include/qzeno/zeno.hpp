// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qzeno/decay.hpp"
#include "qzeno/response_first.hpp"
#include "qzeno/response_second.hpp"

namespace qzeno::zeno {

/// A measurement count that may be the analytic N -> infinity limit rather
/// than a large sentinel integer.
struct ObservationCount {
    std::uint64_t n = 1;
    bool is_infinite = false;

    static ObservationCount finite(std::uint64_t n);
    static ObservationCount infinity();
};

/// Survival after N equally spaced observations: one vacuum-window factor for
/// the first interval and N-1 flat-band factors using the small-interval
/// truncation p dt + q dt^2.  A vacuum state after the first measurement
/// reduces to N identical vacuum factors.
/// Throws perturbation_error if any per-interval probability leaves [0, 1].
double survival_after_n(const response::QubitFieldParams& params,
                        const flatband::FieldState& state_after_first,
                        const decay::MeasurementSchedule& schedule);

/// exp(-sigma p T - sigma q T^2 / N); at N = infinity the quadratic term
/// drops and the curve is the classical exponential with lifetime
/// tau_c = 1 / (sigma p).
double survival_continuous_limit(const response::QubitFieldParams& params, double a, double T,
                                 ObservationCount N);

/// Largest measurement count permitted by the strict time-energy bound
/// N < T |E|; returns 0 when T |E| <= 1 (no measurement permitted).
std::uint64_t landau_peierls_max_n(double T, double E);

enum class LawTag { Classical, GaussianZeno, FirstOrderVacuum, FlatBandSequence, ContinuousLimit };

/// A sampled survival law: strictly increasing times starting at (0, 1),
/// all survival values in [0, 1].
struct SurvivalCurve {
    LawTag law;
    double T;
    ObservationCount N;
    std::vector<std::pair<double, double>> points; // (time, survival)
};

/// Everything a curve may need; fields irrelevant to the chosen law are
/// ignored.  Validation happens against the law at build time.
struct CurveSpec {
    LawTag law = LawTag::Classical;
    std::size_t num_points = 2;
    double T = 1.0;
    ObservationCount N = ObservationCount::finite(1);
    double tau_E = 1.0;
    double tau_z = 1.0;
    double E = -1.0;
    double sigma = 0.0;
    double a = 1.0;
    /// Cap the per-point measurement count at the time-energy bound.
    bool landau_peierls = false;
};

SurvivalCurve make_survival_curve(const CurveSpec& spec);

/// The capped finite-N curve next to the N = infinity exponential, with the
/// maximum pointwise absolute difference between them.
struct LandauPeierlsComparison {
    SurvivalCurve capped;
    SurvivalCurve exponential;
    double max_abs_diff;
};

LandauPeierlsComparison landau_peierls_comparison(const CurveSpec& spec);

} // namespace qzeno::zeno
