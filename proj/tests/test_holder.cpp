#include <catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "fracreg/catalog.hpp"
#include "fracreg/holder.hpp"

using namespace fracreg;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

template <typename F>
SampledCurve sample(F f, double a, double b, std::size_t n) {
    SampledCurve c;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
        c.x.push_back(x);
        c.y.push_back(f(x));
    }
    return c;
}

double brute_seminorm(const SampledCurve& c, double beta) {
    double best = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        for (std::size_t j = i + 1; j < c.size(); ++j) {
            best = std::max(best, std::abs(c.y[j] - c.y[i]) / std::pow(c.x[j] - c.x[i], beta));
        }
    }
    return best;
}

}  // namespace

TEST_CASE("Hoelder seminorm of elementary curves") {
    const auto id = sample([](double x) { return x; }, 0.0, 1.0, 4096);
    CHECK_THAT(holder_seminorm(id, 1.0), WithinRel(1.0, 1e-12));
    CHECK_THAT(holder_seminorm(id, 0.5), WithinRel(1.0, 1e-12));

    const auto root = sample([](double x) { return std::sqrt(x); }, 0.0, 1.0, 4096);
    CHECK(holder_seminorm(root, 0.5) >= 1.0 - 1e-3);
    CHECK(holder_seminorm(root, 0.5) <= 1.0 + 1e-12);

    const auto flat = sample([](double) { return 3.0; }, 0.0, 1.0, 100);
    CHECK(holder_seminorm(flat, 0.4) == 0.0);
}

TEST_CASE("windowed seminorm equals the all-pairs maximum") {
    const auto c = sample([](double x) { return std::sin(40.0 * x) + std::cbrt(x - 0.3); }, 0.0, 1.0, 5000);
    for (double beta : {0.3, 0.7, 1.0}) CHECK(holder_seminorm(c, beta) == brute_seminorm(c, beta));
}

TEST_CASE("Hoelder seminorm checks its inputs") {
    SampledCurve c{{0.0, 1.0, 1.0}, {0.0, 1.0, 2.0}, "", 0.0};
    CHECK_THROWS_AS(holder_seminorm(c, 0.5), PreconditionError);
    c.x = {0.0, 1.0};
    CHECK_THROWS_AS(holder_seminorm(c, 0.5), PreconditionError);
    c.y = {0.0, 1.0};
    CHECK_THROWS_AS(holder_seminorm(c, 0.0), DomainError);
    CHECK_THROWS_AS(holder_seminorm(c, 1.5), DomainError);
}

TEST_CASE("local exponent recovers monomial powers") {
    for (double alpha : {0.3, 5.0 / 6.0, 1.3, 1.9}) {
        const int order = alpha < 1.0 ? 0 : 1;
        const auto e = local_exponent([&](double x) { return std::pow(x, alpha); }, 0.0, 1e-6, 1e-1, order);
        REQUIRE(e);
        CHECK_THAT(e->exponent, WithinAbs(alpha, 1e-6));
        CHECK(e->fit_residual < 1e-9);
    }
    const auto sq = local_exponent([](double x) { return x * x; }, 0.0, 1e-6, 1e-1, 1);
    REQUIRE(sq);
    CHECK_THAT(sq->exponent, WithinAbs(2.0, 1e-9));
    CHECK_THAT(sq->seminorm_at_exponent, WithinRel(2.0, 1e-6));
}

TEST_CASE("local exponent of the power-law constructions at the origin") {
    const auto a = power_cutoff(5.0 / 6.0);
    const auto ea = local_exponent([&](double x) { return a(x); }, 0.0);
    REQUIRE(ea);
    CHECK_THAT(ea->exponent, WithinAbs(5.0 / 6.0, 0.02));
    const auto b = signed_power_plus_linear(make_params(0.4, 0.5));
    const auto eb = local_exponent([&](double x) { return b(x); }, 0.0, 1e-6, 1e-1, 1);
    REQUIRE(eb);
    CHECK_THAT(eb->exponent, WithinAbs(1.3, 0.02));
}

TEST_CASE("local exponent of smooth and affine functions") {
    const auto e = local_exponent([](double x) { return std::sin(x); }, 0.3, 1e-3 * std::ldexp(1.0, -14), 1e-3);
    REQUIRE(e);
    CHECK_THAT(e->exponent, WithinAbs(1.0, 1e-3));
    CHECK_FALSE(local_exponent([](double x) { return 2.0 * x + 1.0; }, 0.25, 1e-6, 1e-1, 1));
    CHECK_THROWS_AS(local_exponent([](double x) { return x; }, 0.0, 1e-2, 1e-1), PreconditionError);
    CHECK_THROWS_AS(local_exponent([](double x) { return x; }, 0.0, 1e-1, 1e-2), PreconditionError);
    CHECK_THROWS_AS(local_exponent([](double x) { return x; }, 0.0, 1e-6, 1e-1, 2), PreconditionError);
}

TEST_CASE("local exponent of the periodic profile") {
    const auto u = periodic_profile(make_params(0.25, 0.4));
    const auto at0 = local_exponent([&](double x) { return u(x); }, 0.0);
    REQUIRE(at0);
    CHECK_THAT(at0->exponent, WithinAbs(5.0 / 6.0, 1e-6));
    // Away from the origin the profile is smooth: the second-order remainder
    // decays at least linearly (here quadratically, u'' does not vanish).
    for (double x0 : {0.1, 0.25, 0.4}) {
        const auto mid = local_exponent([&](double x) { return u(x); }, x0, 1e-6, 1e-2, 1);
        REQUIRE(mid);
        CHECK(mid->exponent >= 1.0);
    }
}

TEST_CASE("Lipschitz quotient") {
    const auto c = sample([](double x) { return x * x; }, 0.0, 1.0, 11);
    CHECK_THAT(lipschitz_quotient_max(c), WithinRel(1.9, 1e-12));
    const SampledCurve dup{{0.0, 0.0}, {1.0, 2.0}, "", 0.0};
    CHECK_THROWS_AS(lipschitz_quotient_max(dup), PreconditionError);
    const SampledCurve one{{0.0}, {1.0}, "", 0.0};
    CHECK_THROWS_AS(lipschitz_quotient_max(one), PreconditionError);
}

TEST_CASE("modulus of continuity") {
    const auto id = sample([](double x) { return x; }, 0.0, 1.0, 101);
    const ModulusCurve m = modulus_of_continuity(id, {0.055, 0.105, 2.0});
    REQUIRE(m.scales.size() == 3);
    CHECK(m.scales.front() == 2.0);
    CHECK_THAT(m.values[0], WithinAbs(1.0, 1e-15));
    CHECK_THAT(m.values[1], WithinAbs(0.10, 1e-12));
    CHECK_THAT(m.values[2], WithinAbs(0.05, 1e-12));

    const auto root = sample([](double x) { return std::sqrt(x); }, 0.0, 1.0, 401);
    const ModulusCurve r = modulus_of_continuity(root, {0.01, 0.04});
    CHECK_THAT(r.values[0], WithinAbs(0.2, 1e-12));
    CHECK_THAT(r.values[1], WithinAbs(0.1, 1e-12));
}
