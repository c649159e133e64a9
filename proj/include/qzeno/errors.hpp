// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace qzeno {

/// Input outside the documented domain of an operation.
class domain_error : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// An iterative scheme (quadrature, excision, regulator fit) failed to reach
/// the requested tolerance.  Carries the best estimate obtained so far.
class convergence_error : public std::runtime_error {
  public:
    convergence_error(const std::string& what, double best_estimate, double est_abs_error)
        : std::runtime_error(what), best_estimate_(best_estimate), est_abs_error_(est_abs_error) {}

    double best_estimate() const noexcept { return best_estimate_; }
    double est_abs_error() const noexcept { return est_abs_error_; }

  private:
    double best_estimate_;
    double est_abs_error_;
};

/// A caller-supplied function violated its contract (e.g. a survival law
/// returning a value outside [0, 1]).
class contract_error : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

/// First-order perturbation theory produced a transition probability above 1;
/// the result is not trustworthy and is not clamped.
class perturbation_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace qzeno
