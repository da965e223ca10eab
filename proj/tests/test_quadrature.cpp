#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "fracreg/quadrature.hpp"

using namespace fracreg;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("smooth integrals") {
    const auto q = quad::integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi);
    CHECK(q.converged);
    CHECK_THAT(q.value, WithinAbs(2.0, 1e-13));
    CHECK(q.error <= 1e-10);

    const auto e = quad::integrate([](double x) { return std::exp(x); }, -1.0, 2.0, {1e-14, 1e-14, 1 << 12});
    CHECK_THAT(e.value, WithinRel(std::exp(2.0) - std::exp(-1.0), 1e-14));
}

TEST_CASE("panels split at kinks") {
    const double breaks[] = {-1.0, 0.0, 1.0};
    const auto q = quad::integrate_panels([](double x) { return std::abs(x); }, breaks);
    CHECK_THAT(q.value, WithinAbs(1.0, 1e-15));
}

TEST_CASE("algebraic endpoint singularities") {
    for (double alpha : {-0.9, -0.5, -0.1, 0.3}) {
        const auto l = quad::integrate_left_singular([&](double x) { return std::pow(x, alpha); }, 0.0, 1.0, alpha,
                                                     {1e-13, 1e-13, 1 << 14});
        CHECK_THAT(l.value, WithinRel(1.0 / (alpha + 1.0), 1e-11));
    }
    // The right-end variant sees absolute abscissae, so it is exercised on
    // bounded integrands with an unbounded derivative.
    for (double alpha : {0.3, 0.5, 0.8}) {
        const auto r = quad::integrate_right_singular([&](double x) { return std::pow(2.0 - x, alpha); }, 1.0, 2.0,
                                                      alpha, {1e-13, 1e-13, 1 << 14});
        CHECK_THAT(r.value, WithinRel(1.0 / (alpha + 1.0), 1e-11));
    }
    CHECK_THROWS(quad::integrate_left_singular([](double x) { return 1.0 / x; }, 0.0, 1.0, -1.0));
}

TEST_CASE("semi-infinite integrals with algebraic decay") {
    for (double decay : {1.1, 1.5, 2.0, 3.0}) {
        const auto q = quad::integrate_to_infinity([&](double x) { return std::pow(x, -decay); }, 2.0, decay,
                                                   {1e-13, 1e-13, 1 << 14});
        CHECK_THAT(q.value, WithinRel(std::pow(2.0, 1.0 - decay) / (decay - 1.0), 1e-11));
    }
    CHECK_THROWS(quad::integrate_to_infinity([](double x) { return x; }, 0.0, 2.0));
    CHECK_THROWS(quad::integrate_to_infinity([](double x) { return x; }, 1.0, 1.0));
}

TEST_CASE("subdivision budget is reported") {
    const auto q = quad::integrate([](double x) { return std::sin(1.0 / x); }, 1e-6, 1.0, {1e-15, 1e-15, 8});
    CHECK_FALSE(q.converged);
    CHECK(q.subdivisions <= 8);
}
