#include <catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fracreg/catalog.hpp"
#include "fracreg/decomposition.hpp"
#include "fracreg/extract.hpp"
#include "fracreg/holder.hpp"
#include "fracreg/local_ode.hpp"
#include "oracles.hpp"

using namespace fracreg;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const FracParams kRegimeI = make_params(0.25, 0.4);

const ExtractedNonlinearity& regime_i_f() {
    static const ExtractedNonlinearity f = extract_f(power_cutoff(kRegimeI.r), kRegimeI, 0.5, 200);
    return f;
}

}  // namespace

TEST_CASE("extracted nonlinearity of an odd function vanishes at 0") {
    const auto& f = regime_i_f();
    REQUIRE(f.grid_t().size() == 201);
    CHECK(f.grid_t().front() == 0.0);
    CHECK_THAT(f.t_max(), WithinRel(std::pow(0.5, kRegimeI.r), 1e-15));
    CHECK(std::abs(f.values_f().front()) <= 1e-10);
    CHECK(f.extension() == Extension::RangeOnly);
}

TEST_CASE("extracted nonlinearity against the oracle between nodes") {
    const auto& f = regime_i_f();
    const oracle::PowerCutoff v{kRegimeI.r, 0.0};
    for (double x : {0.2013, 0.3771, 0.4662}) {
        const double t = std::pow(x, kRegimeI.r);
        const double exact = oracle::frac_lap_power_cutoff(v, x, kRegimeI.s);
        CHECK_THAT(f(t), WithinAbs(exact, 1e-6 * (1.0 + std::abs(exact))));
        CHECK(f.interpolation_error_estimate(t) < 1e-5);
    }
}

TEST_CASE("extracted nonlinearity matches the decomposition formula at the nodes") {
    const auto& f = regime_i_f();
    const auto u = power_cutoff(kRegimeI.r);
    const auto k = decomposition_constants(kRegimeI.r, kRegimeI.s);
    double worst = 0.0;
    for (std::size_t j = 1; j < f.grid_t().size(); j += 7) {
        const double x = 0.5 * static_cast<double>(j) / 200.0;
        worst = std::max(worst, std::abs(decomposition_eval(u, x, kRegimeI, k).value - f.values_f()[j]));
    }
    CHECK(worst <= 1e-6);
}

TEST_CASE("seminorm of the extracted nonlinearity is stable under refinement") {
    const auto& f = regime_i_f();
    const auto f2 = extract_f(power_cutoff(kRegimeI.r), kRegimeI, 0.5, 400);
    const double a = holder_seminorm(f.as_curve(), kRegimeI.beta);
    const double b = holder_seminorm(f2.as_curve(), kRegimeI.beta);
    CHECK(std::abs(b - a) < 0.05 * a);
}

TEST_CASE("boundary case reproduces the closed form at every node") {
    const FracParams p = make_params(0.3, 0.4);
    const auto f = extract_f(abs_cutoff(), p, 0.5, 20);
    for (std::size_t j = 0; j < f.grid_t().size(); ++j) {
        CHECK_THAT(f.values_f()[j], WithinAbs(abs_cutoff_laplacian(f.grid_t()[j], p.s).value, 1e-9));
    }
    CHECK_THROWS_AS(odd_extend(f), ConsistencyError);
}

TEST_CASE("odd extension") {
    const auto& f = regime_i_f();
    const auto g = odd_extend(f);
    const std::size_t n = f.grid_t().size();
    REQUIRE(g.grid_t().size() == 2 * n - 1);
    CHECK(g.extension() == Extension::OddExtended);
    CHECK(g.grid_t()[n - 1] == 0.0);
    CHECK(g.values_f()[n - 1] == 0.0);
    for (std::size_t i = 1; i < n; ++i) {
        CHECK(g.grid_t()[n - 1 - i] == -g.grid_t()[n - 1 + i]);
        CHECK(g.values_f()[n - 1 - i] == -g.values_f()[n - 1 + i]);
    }
    for (double t : {0.013, 0.21, 0.5}) CHECK_THAT(g(-t), WithinAbs(-g(t), 1e-15));

    const double beta = kRegimeI.beta;
    CHECK(holder_seminorm(g.as_curve(), beta) <= 2.0 * holder_seminorm(f.as_curve(), beta) * (1.0 + 1e-12));
    CHECK_THROWS_AS(odd_extend(g), PreconditionError);
}

TEST_CASE("interpolant is constant beyond the sampled range") {
    const auto& f = regime_i_f();
    CHECK(f(10.0) == f.values_f().back());
    CHECK(f(-1.0) == f.values_f().front());
    const auto g = odd_extend(f);
    CHECK(g(10.0) == g.values_f().back());
    CHECK(g(-10.0) == g.values_f().front());
}

TEST_CASE("semilinear residual at extraction nodes") {
    const auto u = power_cutoff(kRegimeI.r);
    const auto g = odd_extend(regime_i_f());
    std::vector<double> grid;
    for (int k = -20; k <= 20; ++k) grid.push_back(0.025 * k);
    const ResidualReport rep = semilinear_residual(u, g, kRegimeI.s, grid, -0.5, 0.5);
    REQUIRE(rep.residuals.size() == grid.size());
    CHECK(rep.sup_residual <= 1e-12 * (1.0 + rep.max_abs_lhs));
    CHECK(rep.max_abs_lhs > 0.1);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK_THAT(rep.lhs[i], WithinAbs(-rep.lhs[grid.size() - 1 - i], 1e-12));
    }

    const std::vector<double> outside{0.6};
    CHECK_THROWS_AS(semilinear_residual(u, g, kRegimeI.s, outside, -0.5, 0.5), PreconditionError);
}

TEST_CASE("extraction requires a strictly increasing u") {
    CHECK_THROWS_AS(extract_f(power_cutoff(kRegimeI.r), kRegimeI, 1.5, 30), PreconditionError);
    CHECK_THROWS_AS(extract_f(power_cutoff(kRegimeI.r), kRegimeI, 0.0, 30), DomainError);
    CHECK_THROWS_AS(extract_f(power_cutoff(kRegimeI.r), kRegimeI, 0.5, 2), PreconditionError);
    CHECK_THROWS_AS(ExtractedNonlinearity({0, 1, 1, 2}, {0, 0, 0, 0}, {0, 0, 0, 0}, 2, Extension::RangeOnly),
                    PreconditionError);
    CHECK_THROWS_AS(ExtractedNonlinearity({0, 1, 2}, {0, 0, 0}, {0, 0, 0}, 2, Extension::RangeOnly),
                    PreconditionError);
}

TEST_CASE("CSV output") {
    const ExtractedNonlinearity f({0.0, 0.1, 1.0, 2.0}, {0.0, 0.5, -1.0, 3.0}, {0, 0, 0, 0}, 2.0,
                                  Extension::RangeOnly);
    std::ostringstream os;
    write_csv(f, os);
    CHECK(os.str() == "t,f\n0,0\n0.10000000000000001,0.5\n1,-1\n2,3\n");

    const auto dir = std::filesystem::temp_directory_path() / "fracreg_test_extract";
    std::filesystem::create_directories(dir);
    const auto path = dir / "f.csv";
    write_file_atomically(path, os.str());
    write_file_atomically(path, os.str());
    std::ifstream in(path);
    std::stringstream back;
    back << in.rdbuf();
    CHECK(back.str() == os.str());
    CHECK_FALSE(std::filesystem::exists(dir / "f.csv.tmp"));
    std::filesystem::remove_all(dir);
}

TEST_CASE("local second-order example") {
    const auto ex = local_ode_example(0.5);
    CHECK_THAT(ex.u_second(1.0), WithinRel(3.75, 1e-15));
    CHECK_THAT(ex.f(2.0), WithinRel(3.75, 1e-14));
    CHECK(ex.f(-1.0) == 0.0);
    CHECK(ex.u_second(-0.3) == 0.0);
    CHECK_THAT(ex.inverse(ex.u(0.7)), WithinAbs(0.7, 1e-14));
    CHECK(ex.check(-1.0, 2.0, 301) <= 1e-10);
    double worst = 0.0;
    for (double x : {0.0, 1e-6, 1e-3, 0.1, 0.5, 1.0}) {
        for (double y : {2e-6, 2e-3, 0.3, 0.9, 2.0}) worst = std::max(worst, ex.holder_quotient(x, y));
    }
    CHECK(worst <= ex.constant());
    CHECK_THROWS_AS(local_ode_example(1.0), DomainError);
}
