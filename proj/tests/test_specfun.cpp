#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "qzeno/errors.hpp"
#include "qzeno/quadrature.hpp"
#include "qzeno/specfun.hpp"

using namespace qzeno;
using specfun::cos_deficit_integral;
using specfun::cos_integral;
using specfun::euler_gamma;
using specfun::heaviside;
using specfun::sin_integral;

TEST_CASE("sin_integral basics")
{
    CHECK(sin_integral(0.0).value == 0.0);

    // odd by construction
    CHECK(sin_integral(-3.7).value == -sin_integral(3.7).value);

    // value frozen from adaptive quadrature of sin(t)/t on [0, 1] at 1e-12
    CHECK(std::abs(sin_integral(1.0).value - 0.9460830703671830) < 1e-12);

    const auto direct = quad::integrate([](double t) { return std::sin(t) / t; }, 0.0, 1.0, 1e-12);
    CHECK(std::abs(sin_integral(1.0).value - direct.value) < 1e-12);

    CHECK_THROWS_AS(sin_integral(std::numeric_limits<double>::infinity()), domain_error);
    CHECK_THROWS_AS(sin_integral(std::nan("")), domain_error);
}

TEST_CASE("sin_integral oddness over random arguments")
{
    std::mt19937 rng(20240901);
    std::uniform_real_distribution<double> dist(-50.0, 50.0);
    for (int i = 0; i < 1000; ++i) {
        const double z = dist(rng);
        CHECK(sin_integral(-z).value == -sin_integral(z).value);
    }
}

TEST_CASE("sin_integral asymptote")
{
    for (double z = 20.0; z <= 500.0; z *= 1.37) {
        CHECK(std::abs(sin_integral(z).value - M_PI_2) <= 2.0 / z);
    }
    CHECK(std::abs(sin_integral(100.0).value - M_PI_2) <= 0.02);
}

TEST_CASE("sin_integral continuity at the series/asymptotic crossover")
{
    const double below = sin_integral(3.9999999).value;
    const double above = sin_integral(4.0000001).value;
    CHECK(std::abs(below - above) < 1e-6);
    // both sides against quadrature
    for (double z : {3.9, 4.0, 4.1}) {
        const auto q = quad::integrate([](double t) { return std::sin(t) / t; }, 0.0, z, 1e-13);
        CHECK(std::abs(sin_integral(z).value - q.value) < 1e-11);
    }
}

TEST_CASE("cos_integral basics")
{
    // Ci(z) -> gamma + ln z as z -> 0+
    CHECK(std::abs(cos_integral(1e-6).value - euler_gamma - std::log(1e-6)) <= 1e-12);

    // Ci(1) = gamma + int_0^1 (cos t - 1)/t dt, both sides independent
    const auto q = quad::integrate([](double t) { return (std::cos(t) - 1.0) / t; }, 0.0, 1.0, 1e-13);
    CHECK(std::abs(cos_integral(1.0).value - (euler_gamma + q.value)) < 1e-12);

    // decays toward zero at large argument
    CHECK(std::abs(cos_integral(10.0).value) <= 0.1);

    CHECK_THROWS_AS(cos_integral(0.0), domain_error);
    CHECK_THROWS_AS(cos_integral(-1.0), domain_error);
}

TEST_CASE("cos_deficit_integral basics")
{
    CHECK(cos_deficit_integral(0.0).value == 0.0);

    // leading Taylor term is -x^2/4
    CHECK(std::abs(cos_deficit_integral(0.1).value - (-0.0025)) <= 1e-5);

    // identity against cos_integral
    const double x = 2.0;
    CHECK(std::abs(cos_deficit_integral(x).value
                   - (cos_integral(x).value - euler_gamma - std::log(x)))
          < 1e-12);

    CHECK_THROWS_AS(cos_deficit_integral(-0.5), domain_error);

    // always <= 0 on a sweep
    for (double t = 0.0; t < 30.0; t += 0.37) CHECK(cos_deficit_integral(t).value <= 0.0);
}

TEST_CASE("cos_deficit identity at the required points")
{
    for (double x : {0.01, 0.1, 1.0, 5.0, 20.0}) {
        const double lhs = cos_deficit_integral(x).value;
        const double rhs = cos_integral(x).value - euler_gamma - std::log(x);
        CHECK(std::abs(lhs - rhs) < 1e-10);
    }
}

TEST_CASE("error estimates bound the difference against tighter quadrature")
{
    // Si
    for (double z : {0.5, 2.0, 3.9, 7.0, 30.0}) {
        const auto s = sin_integral(z);
        const auto q = quad::integrate([](double t) { return std::sin(t) / t; }, 0.0, z,
                                       s.est_abs_error / 10.0);
        CHECK(s.est_abs_error >= 0.0);
        CHECK(std::isfinite(s.est_abs_error));
        CHECK(std::abs(s.value - q.value) <= s.est_abs_error + q.est_abs_error);
    }
    // cosine deficit
    for (double x : {0.5, 2.0, 6.0, 15.0}) {
        const auto d = cos_deficit_integral(x);
        const auto q = quad::integrate([](double t) { return (std::cos(t) - 1.0) / t; }, 0.0, x,
                                       d.est_abs_error / 10.0);
        CHECK(std::abs(d.value - q.value) <= d.est_abs_error + q.est_abs_error);
    }
}

TEST_CASE("heaviside")
{
    CHECK(heaviside(2.5) == 1.0);
    CHECK(heaviside(-2.5) == 0.0);
    CHECK(heaviside(0.0) == 0.5);
    CHECK_THROWS_AS(heaviside(std::nan("")), domain_error);
}
