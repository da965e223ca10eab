// Walk through the regime-I counterexample: build u, extract f from
// (-Delta)^s u = f(u), and compare the Hölder exponents of u and f at 0.

#include <cmath>
#include <cstdio>

#include "fracreg/fracreg.hpp"

int main() {
    using namespace fracreg;
    const FracParams p = make_params(0.25, 0.4);
    const PiecewiseFunction u = power_cutoff(p.r);
    std::printf("s = %.2f, beta = %.2f, r = 2s/(1-beta) = %.6f (%s)\n", p.s, p.beta, p.r,
                std::string(to_string(p.regime)).c_str());

    const ExtractedNonlinearity f = odd_extend(extract_f(u, p, 0.5, 500));
    std::printf("f sampled on [-%.6f, %.6f], %zu nodes, max quadrature error %.2e\n", f.t_max(), f.t_max(),
                f.grid_t().size(), f.max_sample_error());

    std::printf("\n%10s %14s %14s %12s\n", "x", "u(x)", "(-D)^s u", "residual");
    for (double x : {-0.437, -0.2113, -0.0471, 0.0, 0.0471, 0.2113, 0.437}) {
        const EvalResult lhs = frac_lap_direct(u, x, p.s);
        std::printf("%10.3f %14.9f %14.9f %12.2e\n", x, u(x), lhs.value, std::abs(lhs.value - f(u(x))));
    }

    const auto eu = local_exponent(u, 0.0);
    auto f_exact = [&](double t) { return frac_lap_direct(u, invert_monotone(u, t, 0.0, 0.5), p.s).value; };
    const auto ef = local_exponent(f_exact, 0.0, std::ldexp(1e-5, -13), 1e-5);
    std::printf("\nlocal exponent of u at 0: %.4f (expected r = %.4f)\n", eu->exponent, p.r);
    std::printf("local exponent of f at 0: %.4f (expected beta = %.4f)\n", ef->exponent, p.beta);
    std::printf("2s + beta = %.4f exceeds the exponent of u: u is no better than C^r\n", 2.0 * p.s + p.beta);
    return 0;
}
