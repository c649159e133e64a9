// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

namespace qzeno::verify {

enum class Verdict { Pass, Flag };

/// One closed-form-vs-oracle comparison.  verdict is Pass exactly when
/// abs_diff <= tolerance; a Flag records a quantified disagreement, it is
/// never an execution failure.
struct ReportEntry {
    std::string formula_id;
    std::string anchor;
    double closed_form;
    double oracle;
    double abs_diff;
    double tolerance;
    Verdict verdict;
};

struct VerificationReport {
    std::vector<ReportEntry> entries;
    bool has_flags() const;
    std::size_t flag_count() const;
};

struct VerifyOptions {
    /// When set, replaces every entry's built-in tolerance.
    std::optional<double> tol_override;
};

/// Runs the whole registry.  Exceptions inside an entry are converted to a
/// Flag with a NaN oracle value; the run itself never throws for registry
/// formulas.
VerificationReport run_verification(const VerifyOptions& options = {});

const char* to_string(Verdict v);

} // namespace qzeno::verify
