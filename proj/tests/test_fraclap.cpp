#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "fracreg/catalog.hpp"
#include "fracreg/decomposition.hpp"
#include "fracreg/fraclap.hpp"
#include "oracles.hpp"

using namespace fracreg;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// The four pieces of ∫ (u(x+y) - u(x))/|y|^{1+2s} dy for u = min(|x|, 1),
// integrated from their definitions.
struct OracleQ {
    double q1, q2, q3, q4;
};

OracleQ oracle_q(double x, double s) {
    const double e = 1.0 + 2.0 * s;
    OracleQ q{};
    // y < -1 - x: u(x + y) = 1.
    q.q1 = oracle::exp_sinh([&](double z) { return (1.0 - x) * std::pow(1.0 + x + z, -e); });
    // -1 - x < y < -x, with -y = x + t: u(x + y) = t.
    q.q2 = oracle::tanh_sinh([&](double t) { return (t - x) * std::pow(x + t, -e); }, 1.0);
    // -x < y < 1 - x: the odd part cancels on (-x, x); the rest is y^{-2s}.
    q.q3 = x < 0.5 ? oracle::tanh_sinh([&](double y) { return std::pow(x + y, -2.0 * s); }, 1.0 - 2.0 * x) : 0.0;
    // y > 1 - x: u(x + y) = 1.
    q.q4 = oracle::exp_sinh([&](double z) { return (1.0 - x) * std::pow(1.0 - x + z, -e); });
    return q;
}

}  // namespace

TEST_CASE("odd functions have zero fractional Laplacian at the origin") {
    CHECK(frac_lap_direct(power_cutoff(5.0 / 6.0), 0.0, 0.25).value == 0.0);
    CHECK(frac_lap_direct(signed_power_plus_linear(make_params(0.4, 0.5)), 0.0, 0.4).value == 0.0);
    CHECK(frac_lap_direct(periodic_profile(make_params(0.25, 0.4)), 0.0, 0.25).value == 0.0);
}

TEST_CASE("Q integrals at the origin") {
    const QIntegrals q = closed_form_Q_integrals(0.0, 0.2);
    CHECK_THAT(q.q1, WithinRel(2.5, 1e-15));
    CHECK_THAT(q.q2, WithinRel(1.0 / 0.6, 1e-15));
    CHECK_THAT(q.q3, WithinRel(1.0 / 0.6, 1e-15));
    CHECK_THAT(q.q4, WithinRel(2.5, 1e-15));
}

TEST_CASE("Q closed forms against quadrature of their definitions") {
    for (double s : {0.1, 0.2, 0.35}) {
        for (double x : {0.1, 0.3, 0.5}) {
            const QIntegrals q = closed_form_Q_integrals(x, s);
            const OracleQ o = oracle_q(x, s);
            CHECK_THAT(q.q1, WithinAbs(o.q1, 1e-10));
            CHECK_THAT(q.q2, WithinAbs(o.q2, 1e-10));
            CHECK_THAT(q.q3, WithinAbs(o.q3, 1e-10));
            CHECK_THAT(q.q4, WithinAbs(o.q4, 1e-10));
        }
    }
    CHECK_THAT(closed_form_Q_integrals(0.3, 0.2).q4, WithinRel(std::pow(0.7, 0.6) / 0.4, 1e-15));
    CHECK_THROWS_AS(closed_form_Q_integrals(0.3, 0.5), DomainError);
    CHECK_THROWS_AS(closed_form_Q_integrals(0.6, 0.2), DomainError);
}

TEST_CASE("direct quadrature of the cut-off absolute value matches the closed form") {
    const PiecewiseFunction u = abs_cutoff();
    for (double s : {0.1, 0.2, 0.35}) {
        for (double x : {-0.4, -0.1, 0.05, 0.25, 0.5}) {
            const auto closed = abs_cutoff_laplacian(x, s);
            CHECK_THAT(frac_lap_direct(u, x, s).value, WithinAbs(closed.value, 1e-8));
            CHECK_THAT(closed.singular + closed.smooth, WithinAbs(closed.value, 1e-14));
        }
    }
}

TEST_CASE("cosine is an eigenfunction") {
    for (double P : {1.0, 2.5}) {
        const PiecewiseFunction u = cosine_wave(P);
        for (double s : {0.2, 0.5, 0.8}) {
            const double lambda = std::pow(2.0 * std::numbers::pi / P, 2.0 * s);
            for (double x : {0.0, 0.13, 0.4 * P, -0.7}) {
                CHECK_THAT(frac_lap_direct(u, x, s).value, WithinAbs(lambda * u(x), 1e-6));
            }
        }
    }
}

TEST_CASE("power cut-off against the oracle and the frozen value") {
    // Frozen from a 30-digit evaluation: 0.324243283714870232783842378558
    constexpr double frozen = 0.32424328371487023;
    const oracle::PowerCutoff v{5.0 / 6.0, 0.0};
    CHECK_THAT(oracle::frac_lap_power_cutoff(v, 0.25, 0.25), WithinRel(frozen, 1e-12));
    CHECK_THAT(frac_lap_direct(power_cutoff(5.0 / 6.0), 0.25, 0.25).value, WithinRel(frozen, 1e-9));

    for (double x : {0.03, 0.1, 0.45}) {
        CHECK_THAT(frac_lap_direct(power_cutoff(5.0 / 6.0), x, 0.25).value,
                   WithinRel(oracle::frac_lap_power_cutoff(v, x, 0.25), 1e-9));
    }
}

TEST_CASE("signed power plus identity against the oracle and the frozen value") {
    // Frozen from the oracle; the library agrees to 1e-14.
    constexpr double frozen = 0.1268604914114570;
    const oracle::PowerCutoff v{1.3, 1.0};
    const auto u = signed_power_plus_linear(make_params(0.4, 0.5));
    CHECK_THAT(oracle::frac_lap_power_cutoff(v, 0.25, 0.4), WithinRel(frozen, 1e-12));
    CHECK_THAT(frac_lap_direct(u, 0.25, 0.4).value, WithinRel(frozen, 1e-9));
}

TEST_CASE("oddness and evenness transfer to the fractional Laplacian") {
    const auto odd = power_cutoff(5.0 / 6.0);
    const auto even = abs_cutoff();
    for (double x : {0.05, 0.2, 0.45, 1.3}) {
        const double a = frac_lap_direct(odd, x, 0.25).value;
        CHECK_THAT(frac_lap_direct(odd, -x, 0.25).value, WithinAbs(-a, 1e-12));
        const double b = frac_lap_direct(even, x, 0.25).value;
        CHECK_THAT(frac_lap_direct(even, -x, 0.25).value, WithinAbs(b, 1e-12));
    }
}

TEST_CASE("dilation scales by lambda^{2s}") {
    const auto u = power_cutoff(5.0 / 6.0);
    const double s = 0.25;
    for (double lambda : {0.5, 2.0, 3.0}) {
        const auto w = u.rescaled(lambda);
        for (double x : {0.05, 0.15}) {
            CHECK_THAT(frac_lap_direct(w, x, s).value,
                       WithinRel(std::pow(lambda, 2.0 * s) * frac_lap_direct(u, lambda * x, s).value, 1e-8));
        }
    }
}

TEST_CASE("periodic profile is invariant under a period shift") {
    const auto u = periodic_profile(make_params(0.25, 0.4));
    for (double x : {0.1, 0.7, 1.6}) {
        const double a = frac_lap_direct(u, x, 0.25).value;
        CHECK_THAT(frac_lap_direct(u, x + 8.0, 0.25).value, WithinAbs(a, 1e-9));
        CHECK_THAT(frac_lap_direct(u, x - 16.0, 0.25).value, WithinAbs(a, 1e-9));
    }
}

TEST_CASE("H is the far-field part of the singular integral") {
    const double s = 0.25;
    const double x = 0.25;
    const oracle::PowerCutoff v{5.0 / 6.0, 0.0};
    const double inner = oracle::second_difference_integral(v, x, s, 0.5);
    const double full = oracle::second_difference_integral(v, x, s, INFINITY);
    CHECK_THAT(H_eval(power_cutoff(5.0 / 6.0), x, s).value, WithinAbs(inner - full, 1e-10));
    CHECK(H_eval(power_cutoff(5.0 / 6.0), 0.0, s).value == 0.0);
}

TEST_CASE("quadrature configuration is validated") {
    QuadratureConfig c;
    CHECK_NOTHROW(c.validate());
    c.period_terms = 6;
    CHECK_THROWS_AS(c.validate(), PreconditionError);
    c = {};
    c.split_radius = 0.0;
    CHECK_THROWS_AS(c.validate(), PreconditionError);
    c = {};
    c.abs_tol = -1.0;
    CHECK_THROWS_AS(frac_lap_direct(abs_cutoff(), 0.1, 0.2, c), PreconditionError);
    CHECK_THROWS_AS(frac_lap_direct(abs_cutoff(), 0.1, 1.0), DomainError);
    CHECK_THROWS_AS(frac_lap_direct(abs_cutoff(), NAN, 0.2), DomainError);
}

TEST_CASE("non-integrable cusp raises SingularityError") {
    const PiecewiseFunction u({Piece{PowerTerm{1.0, 0.3, 0.0}, 0.0, 1.0}, Piece{ConstantTerm{1.0}, 1.0, kInf}},
                              Symmetry::EvenAboutZero);
    CHECK_THROWS_AS(frac_lap_direct(u, 0.0, 0.25), SingularityError);
    CHECK_NOTHROW(frac_lap_direct(u, 0.0, 0.1));
}

TEST_CASE("an exhausted subdivision budget raises AccuracyError") {
    QuadratureConfig c;
    c.max_subdivisions = 1;
    c.abs_tol = 1e-15;
    c.rel_tol = 1e-15;
    CHECK_THROWS_AS(frac_lap_direct(periodic_profile(make_params(0.25, 0.4)), 0.3, 0.25, c), AccuracyError);
}
