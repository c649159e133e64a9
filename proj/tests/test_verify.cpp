#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>

#include "qzeno/verify.hpp"

using namespace qzeno;
using verify::Verdict;

namespace {

const verify::VerificationReport& full_report()
{
    static const verify::VerificationReport report = verify::run_verification();
    return report;
}

const verify::ReportEntry& entry_starting_with(const std::string& prefix)
{
    for (const auto& e : full_report().entries)
        if (e.formula_id.rfind(prefix, 0) == 0) return e;
    REQUIRE_MESSAGE(false, "no entry with prefix " << prefix);
    static verify::ReportEntry dummy{};
    return dummy;
}

std::size_t count_with_prefix(const std::string& prefix)
{
    std::size_t n = 0;
    for (const auto& e : full_report().entries)
        if (e.formula_id.rfind(prefix, 0) == 0) ++n;
    return n;
}

} // namespace

TEST_CASE("report structure")
{
    const auto& report = full_report();
    CHECK(report.entries.size() >= 9);

    std::set<std::string> ids;
    for (const auto& e : report.entries) {
        CHECK(ids.insert(e.formula_id).second); // each formula id appears once
        CHECK(!e.anchor.empty());
        CHECK(e.tolerance > 0.0);
        // verdict consistency: PASS iff abs_diff <= tolerance
        if (e.verdict == Verdict::Pass)
            CHECK(e.abs_diff <= e.tolerance);
        else
            CHECK_FALSE(e.abs_diff <= e.tolerance);
        // the closed-form side always evaluates
        CHECK(std::isfinite(e.closed_form));
    }
}

TEST_CASE("expected passes")
{
    // the renormalized response agrees with the extrapolated oracle at every
    // required (E, dt) point
    std::size_t checked = 0;
    for (const auto& e : full_report().entries) {
        if (e.formula_id.rfind("first_response_renormalized", 0) == 0) {
            CHECK(e.verdict == Verdict::Pass);
            ++checked;
        }
    }
    CHECK(checked == 9);

    for (const char* id : {"first_response_piece1[E=-1,dt=1]", "first_response_piece2[E=-1,dt=1]",
                           "small_time_linear[E=-1]", "coeff_p_master[E=-1,a=2]",
                           "coeff_p_master[E=-3,a=1]", "coeff_q_degenerate[E=-1,a=1]",
                           "coeff_p_derived[E=-3,a=1]"}) {
        bool found = false;
        for (const auto& e : full_report().entries) {
            if (e.formula_id == id) {
                found = true;
                CHECK_MESSAGE(e.verdict == Verdict::Pass, id);
            }
        }
        CHECK_MESSAGE(found, id);
    }

    for (const auto& e : full_report().entries) {
        if (e.formula_id.rfind("band_overlap_integral", 0) == 0) CHECK(e.verdict == Verdict::Pass);
        if (e.formula_id.rfind("shifted_vacuum_piece", 0) == 0) CHECK(e.verdict == Verdict::Pass);
    }
}

TEST_CASE("expected flags record both values")
{
    // the printed quadratic coefficient disagrees with the fit
    const auto& alpha = entry_starting_with("small_time_quadratic");
    CHECK(alpha.verdict == Verdict::Flag);
    CHECK(std::isfinite(alpha.oracle));
    CHECK(std::abs(alpha.closed_form - alpha.oracle) > 1e-3);

    // the boundary discontinuity of p
    CHECK(entry_starting_with("coeff_p_boundary_below").verdict == Verdict::Flag);
    CHECK(entry_starting_with("coeff_p_boundary_above").verdict == Verdict::Flag);
    CHECK(std::abs(entry_starting_with("coeff_p_boundary_below").oracle
                   - 7.0 / (4.0 * M_PI)) < 1e-14);
    CHECK(std::abs(entry_starting_with("coeff_p_boundary_above").oracle
                   - 5.0 / (4.0 * M_PI)) < 1e-14);

    // the odd-kernel piece disagrees with its defining integral by a factor pi
    for (const auto& e : full_report().entries) {
        if (e.formula_id.rfind("pv_piece", 0) == 0) {
            CHECK(e.verdict == Verdict::Flag);
            CHECK(std::isfinite(e.oracle));
            CHECK(std::abs(e.closed_form - M_PI * e.oracle) < 1e-6);
        }
    }

    // the printed band kernel disagrees with the spectral quadrature at
    // generic points (never by crashing)
    std::size_t kernel_flags = 0;
    for (const auto& e : full_report().entries) {
        if (e.formula_id.rfind("flat_band_kernel", 0) == 0) {
            CHECK(std::isfinite(e.oracle));
            if (e.verdict == Verdict::Flag) ++kernel_flags;
        }
    }
    CHECK(kernel_flags >= 15);

    CHECK(full_report().has_flags());
}

TEST_CASE("registry point counts")
{
    CHECK(count_with_prefix("flat_band_kernel") == 20);
    CHECK(count_with_prefix("first_response_renormalized") == 9);
    CHECK(count_with_prefix("band_overlap_integral") == 3);
    CHECK(count_with_prefix("pv_piece") == 2);
    CHECK(count_with_prefix("shifted_vacuum_piece") == 2);
}

TEST_CASE("tolerance override applies to every entry")
{
    verify::VerifyOptions options;
    options.tol_override = 1e9;
    const auto report = verify::run_verification(options);
    CHECK_FALSE(report.has_flags());
    for (const auto& e : report.entries) CHECK(e.tolerance == 1e9);
}
