#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "fracreg/catalog.hpp"
#include "fracreg/profile.hpp"
#include "fracreg/registry.hpp"
#include "fracreg/serialize.hpp"

using namespace fracreg;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("power_cutoff values") {
    const PiecewiseFunction u = power_cutoff(0.5);
    CHECK(u(0.25) == 0.5);
    CHECK(u(9.0) == 1.0);
    CHECK(u(-9.0) == -1.0);
    for (double x : {0.1, 0.7, 2.0}) CHECK(u(-x) == -u(x));
    CHECK_THAT(power_cutoff(5.0 / 6.0)(std::ldexp(1.0, -6)), WithinRel(std::ldexp(1.0, -5), 1e-15));
}

TEST_CASE("abs_cutoff values") {
    const PiecewiseFunction u = abs_cutoff();
    CHECK(u(0.3) == 0.3);
    CHECK(u(-0.3) == 0.3);
    CHECK(u(5.0) == 1.0);
    CHECK(u(0.0) == 0.0);
    REQUIRE(u.constant_tail());
    CHECK(u.constant_tail()->minus == 1.0);
    CHECK(u.constant_tail()->plus == 1.0);
}

TEST_CASE("signed_power_plus_linear values") {
    const FracParams p = make_params(0.4, 0.5);
    const PiecewiseFunction u = signed_power_plus_linear(p);
    CHECK(u(1.0) == 2.0);
    CHECK(u(0.0) == 0.0);
    CHECK_THAT(u(0.5), WithinRel(std::pow(0.5, 1.3) + 0.5, 1e-15));
    CHECK_THROWS_AS(signed_power_plus_linear(make_params(0.25, 0.4)), DomainError);
}

TEST_CASE("split_v_phi") {
    const PiecewiseFunction u = signed_power_plus_linear(make_params(0.4, 0.5));
    const auto [v, phi] = split_v_phi(u);
    CHECK_THAT(v(0.5), WithinRel(std::pow(0.5, 1.3), 1e-15));
    CHECK(phi(0.5) == 0.5);
    CHECK_THAT(v(0.5) + phi(0.5), WithinRel(u(0.5), 1e-15));
    CHECK(v(3.0) == 1.0);
    CHECK(phi(3.0) == 1.0);
    CHECK(u(3.0) == 2.0);
    CHECK_THAT(v(-0.25), WithinRel(-std::pow(0.25, 1.3), 1e-15));
    CHECK(phi(-0.25) == -0.25);
}

TEST_CASE("periodic profile: power law, half-period shift, periodicity") {
    const FracParams p = make_params(0.25, 0.4);
    const PiecewiseFunction u = periodic_profile(p);
    CHECK(u(0.5) == std::pow(0.5, p.r));
    // Dyadic abscissae keep x + 4 and x + 8 exact.
    for (double x : {0.3125, 1.6875, 2.21875}) CHECK(u(x + 4.0) == -u(x));
    for (double x : {0.296875, 1.125, 1.875, 2.625, 3.3125}) CHECK(u(x + 8.0) == u(x));
    // Elsewhere x + 4 itself is rounded, so agreement is to rounding level.
    for (double x : {0.3, 1.7, 2.2}) CHECK_THAT(u(x + 4.0), WithinAbs(-u(x), 4e-15));
    CHECK(*u.period() == 8.0);
}

TEST_CASE("periodic profile cap height is pinned") {
    // Regression value for the default construction (s, beta) = (0.25, 0.4),
    // delta = 1/4, blend order 2: midpoint of the admissible cap heights.
    const PiecewiseFunction u = periodic_profile(make_params(0.25, 0.4));
    CHECK_THAT(cap_height(u), WithinAbs(1.4790515437564, 1e-12));
}

TEST_CASE("validate_profile on the default profile") {
    const PiecewiseFunction u = periodic_profile(make_params(0.25, 0.4));
    const ProfileValidationReport rep = validate_profile(u);
    REQUIRE(rep.checks.size() == 6);
    for (const auto& c : rep.checks) {
        INFO("property " << c.tag << ": " << c.detail);
        CHECK(c.pass);
    }
    CHECK(rep.all_passed());
    CHECK(rep.delta == 0.25);
}

TEST_CASE("validate_profile grid oracle: monotone and slope bound at 1e-4 over one period") {
    const FracParams p = make_params(0.25, 0.4);
    const PiecewiseFunction u = periodic_profile(p);
    const double slope_bound = p.r;  // u'(1-)
    double prev = u(0.0);
    for (int i = 1; i <= 20000; ++i) {
        const double x = i * 1e-4;
        const double v = u(x);
        REQUIRE(v > prev);
        if (x > 1.0 && x < 2.0) REQUIRE((v - prev) / 1e-4 <= slope_bound * (1.0 + 1e-9));
        prev = v;
    }
    for (int i = 0; i <= 80000; ++i) {
        const double x = -4.0 + i * 1e-4;
        REQUIRE(u(-x) == -u(x));
    }
}

TEST_CASE("validate_profile negative controls fail with witnesses") {
    const FracParams p = make_params(0.25, 0.4);
    const PiecewiseFunction u = periodic_profile(p);

    std::vector<Piece> pieces = u.pieces();
    pieces.back().kind = PolynomialTerm{2.0, {u(2.0), 0.0, -1.0, 0.5}};
    const PiecewiseFunction no_cap(pieces, u.symmetry(), u.mirror(), u.base_period());
    const ProfileCheck f = validate_profile(no_cap).check('f');
    CHECK_FALSE(f.pass);
    CHECK(f.violation > 0.0);
    CHECK(std::abs(f.witness - 2.0) <= 0.25);

    const ProfileShape shape{p.r, 0.0, 0.25, 2};
    const double too_high = 1.0 + p.r * 0.75 + 0.0625 + 0.2;
    const ProfileCheck e = validate_profile(build_periodic_profile(shape, too_high)).check('e');
    CHECK_FALSE(e.pass);
    CHECK(e.violation > 0.0);
    CHECK(e.witness > 1.0);
    CHECK(e.witness < 2.0);
}

TEST_CASE("periodic profile construction fails with a diagnostic when the cap is too steep") {
    // 2 delta = 1 exceeds u'(1-) = 5/6.
    const FracParams p = make_params(0.25, 0.4);
    try {
        periodic_profile(p, 0.5);
        FAIL("expected ConstructionError");
    } catch (const ConstructionError& e) {
        CHECK(std::string(e.what()).find("delta=0.5") != std::string::npos);
    }
    CHECK(default_delta(p.r) == 0.25);
    CHECK(default_delta(0.4) == 0.1);
}

TEST_CASE("regime-II periodic profile is increasing on (0, 2)") {
    const FracParams p = make_params(0.4, 0.5);
    const PiecewiseFunction u = periodic_profile_ii(p);
    CHECK_THAT(u(0.5), WithinRel(std::pow(0.5, 1.3) + 0.5, 1e-15));
    double prev = u(0.0);
    for (int i = 1; i <= 20000; ++i) {
        const double v = u(i * 1e-4);
        REQUIRE(v > prev);
        prev = v;
    }
    CHECK(validate_profile(u).check('f').pass);
}

TEST_CASE("blend order 3 bridge matches derivatives at both joins") {
    const FracParams p = make_params(0.25, 0.4);
    const PiecewiseFunction u = periodic_profile(p, 0.25, 3);
    const double a = 1.0, b = 1.75;
    for (int k = 0; k <= 3; ++k) {
        const double left = piece_derivative(u.pieces()[0].kind, a, k);
        const double bridge_a = piece_derivative(u.pieces()[1].kind, a, k);
        const double bridge_b = piece_derivative(u.pieces()[1].kind, b, k);
        const double right = piece_derivative(u.pieces()[2].kind, b, k);
        CHECK_THAT(bridge_a, WithinAbs(left, 1e-9));
        CHECK_THAT(bridge_b, WithinAbs(right, 1e-9));
    }
    CHECK(validate_profile(u, 3).all_passed());
}

TEST_CASE("symmetry metadata is honored exactly at random points") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> dist(-10.0, 10.0);
    const PiecewiseFunction odd[] = {power_cutoff(5.0 / 6.0), signed_power_plus_linear(make_params(0.4, 0.5)),
                                     periodic_profile(make_params(0.25, 0.4))};
    const PiecewiseFunction even = abs_cutoff();
    for (int i = 0; i < 1000; ++i) {
        const double x = dist(rng);
        for (const auto& u : odd) REQUIRE(u(-x) == -u(x));
        REQUIRE(even(-x) == even(x));
    }
}

TEST_CASE("period folding is exact for dyadic shifts") {
    const PiecewiseFunction u = periodic_profile(make_params(0.25, 0.4));
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> dist(-4.0, 4.0);
    for (int i = 0; i < 1000; ++i) {
        const double x = std::ldexp(std::round(std::ldexp(dist(rng), 40)), -40);
        for (int k = -3; k <= 3; ++k) REQUIRE(u(x + 8.0 * k) == u(x));
    }
}

TEST_CASE("invert_monotone") {
    CHECK_THAT(invert_monotone(power_cutoff(0.5), 0.5, 0.0, 1.0), WithinAbs(0.25, 1e-15));
    const PiecewiseFunction ii = signed_power_plus_linear(make_params(0.4, 0.5));
    CHECK_THAT(invert_monotone(ii, 2.0, 0.0, 1.0), WithinAbs(1.0, 1e-15));

    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> dist(0.0, 0.5);
    const PiecewiseFunction fns[] = {power_cutoff(5.0 / 6.0), ii, periodic_profile(make_params(0.25, 0.4))};
    for (const auto& u : fns) {
        for (int i = 0; i < 200; ++i) {
            const double x = dist(rng);
            REQUIRE_THAT(invert_monotone(u, u(x), 0.0, 0.5), WithinAbs(x, 1e-12));
        }
    }
    CHECK_THROWS_AS(invert_monotone(power_cutoff(0.5), 2.0, 0.0, 1.0), RangeError);
    CHECK_THROWS_AS(invert_monotone(abs_cutoff(), 0.5, -1.0, 1.0), PreconditionError);
}

TEST_CASE("regime-II inverse is 1-Lipschitz") {
    const PiecewiseFunction u = signed_power_plus_linear(make_params(0.4, 0.5));
    std::mt19937_64 rng(14);
    std::uniform_real_distribution<double> dist(0.0, u(0.5));
    for (int i = 0; i < 2000; ++i) {
        double p = dist(rng), q = dist(rng);
        if (p == q) continue;
        if (p > q) std::swap(p, q);
        REQUIRE(invert_monotone(u, q, 0.0, 0.5) - invert_monotone(u, p, 0.0, 0.5) <= (q - p) * (1.0 + 1e-9));
    }
}

TEST_CASE("rescale_periodic") {
    const PiecewiseFunction u = periodic_profile(make_params(0.25, 0.4));
    const RescaledProfile same = rescale_periodic(u, 4.0, 0.25);
    CHECK(same.lambda == 1.0);
    CHECK(same.laplacian_factor == 1.0);
    const RescaledProfile two = rescale_periodic(u, 2.0, 0.25);
    CHECK(two.lambda == 2.0);
    CHECK_THAT(two.laplacian_factor, WithinRel(std::sqrt(2.0), 1e-15));
    CHECK(two.u(0.3) == u(0.6));
    for (double L : {1.0, 3.0}) CHECK_THAT(*rescale_periodic(u, L, 0.25).u.period(), WithinRel(2.0 * L, 1e-15));
    CHECK_THROWS_AS(rescale_periodic(power_cutoff(0.5), 2.0, 0.25), PreconditionError);
}

TEST_CASE("JSON round trip is bit-exact for every catalog function") {
    for (const auto& entry : catalog_entries()) {
        CatalogRequest req;
        req.id = entry.id;
        if (entry.id == "signed-power-plus-linear" || entry.id == "periodic-profile-ii") {
            req.s = 0.4;
            req.beta = 0.5;
        }
        const PiecewiseFunction u = make_catalog_function(req);
        const auto text = to_json(u).dump();
        const PiecewiseFunction back = function_from_json(nlohmann::ordered_json::parse(text));
        INFO(entry.id);
        CHECK(back == u);
        for (double x : {-3.7, -0.4, 0.0, 0.123, 0.9, 1.5, 2.5, 7.1}) CHECK(back(x) == u(x));
    }
}

TEST_CASE("catalog registry") {
    CHECK(is_catalog_id("power-cutoff"));
    CHECK_FALSE(is_catalog_id("no-such-function"));
    CatalogRequest bad;
    bad.id = "no-such-function";
    CHECK_THROWS_AS(make_catalog_function(bad), PreconditionError);
    CatalogRequest req;
    req.id = "power-cutoff";
    req.r = 0.5;
    CHECK(make_catalog_function(req)(0.25) == 0.5);
}

TEST_CASE("constructor validates piece layout") {
    CHECK_THROWS_AS(PiecewiseFunction({Piece{PowerTerm{1.0, 0.5, 0.0}, 0.0, 1.0}}, Symmetry::OddAboutZero),
                    PreconditionError);
}
