// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>

namespace qzeno::specfun {

/// Euler-Mascheroni constant, 21 significant digits.
inline constexpr double euler_gamma = 0.577215664901532860607;

/// A special-function evaluation together with a conservative absolute error
/// bound.  `value` is finite on the documented domain; `est_abs_error` is
/// finite and non-negative.
struct SpecialValue {
    double value;
    double est_abs_error;
};

/// Sine integral Si(z) = int_0^z sin(t)/t dt.
/// Odd in z (enforced algorithmically); Si(z) -> pi/2 as z -> +inf.
/// Throws domain_error for non-finite input.
SpecialValue sin_integral(double z);

/// Cosine integral Ci(z) = gamma + ln z + int_0^z (cos t - 1)/t dt, z > 0.
/// Throws domain_error for z <= 0 or non-finite input.
SpecialValue cos_integral(double z);

/// int_0^x (cos t - 1)/t dt for x >= 0.  Equals Ci(x) - gamma - ln x for
/// x > 0; always <= 0.  Throws domain_error for negative or non-finite input.
SpecialValue cos_deficit_integral(double x);

/// Unit step with the symmetric convention at the origin:
/// 1 for x > 0, 0 for x < 0, 1/2 for x == 0.
double heaviside(double x);

} // namespace qzeno::specfun
