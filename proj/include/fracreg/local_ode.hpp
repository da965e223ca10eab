#pragma once

// Closed-form local example for u'' = f(u): u(x) = x^{2+β} + x for x >= 0 and
// u(x) = x for x < 0, with f(t) = (2+β)(1+β) (u^{-1}(t))^β for t >= 0, 0 otherwise.

#include <algorithm>
#include <cmath>
#include <cstdint>

#include <boost/math/tools/roots.hpp>

#include "fracreg/errors.hpp"

namespace fracreg {

class LocalOdeExample {
public:
    explicit LocalOdeExample(double beta) : beta_(beta) {
        if (!(beta > 0.0 && beta < 1.0)) throw DomainError("LocalOdeExample: beta must lie in (0, 1)");
    }

    double beta() const noexcept { return beta_; }
    /// (2+β)(1+β), the Hölder constant of f.
    double constant() const noexcept { return (2.0 + beta_) * (1.0 + beta_); }

    double u(double x) const { return x >= 0.0 ? std::pow(x, 2.0 + beta_) + x : x; }

    double u_second(double x) const { return x > 0.0 ? constant() * std::pow(x, beta_) : 0.0; }

    /// u^{-1}(t) for t >= 0, where 0 <= u^{-1}(t) <= t.
    double inverse(double t) const {
        if (t < 0.0) return t;
        if (t == 0.0) return 0.0;
        auto g = [&](double x) { return u(x) - t; };
        std::uintmax_t iters = 200;
        const auto [lo, hi] = boost::math::tools::toms748_solve(g, 0.0, t, -t, u(t) - t,
                                                                boost::math::tools::eps_tolerance<double>(), iters);
        return std::abs(g(lo)) <= std::abs(g(hi)) ? lo : hi;
    }

    double f(double t) const { return t >= 0.0 ? constant() * std::pow(inverse(t), beta_) : 0.0; }

    /// f(u(x)) without inversion: the preimage x is known exactly.
    double f_of_u(double x) const { return x >= 0.0 ? constant() * std::pow(x, beta_) : 0.0; }

    /// sup over an n-point grid of [a, b] of |u''(x) - f(u(x))|, with f going
    /// through the numerical inverse.
    double check(double a, double b, int n) const {
        double worst = 0.0;
        for (int i = 0; i < n; ++i) {
            const double x = a + (b - a) * i / (n - 1);
            worst = std::max(worst, std::abs(u_second(x) - f(u(x))));
        }
        return worst;
    }

    /// |f(p) - f(q)| / |p - q|^β with p = u(x), q = u(y).
    double holder_quotient(double x, double y) const {
        const double num = std::abs(f_of_u(x) - f_of_u(y));
        const double den = std::pow(std::abs(u(x) - u(y)), beta_);
        return num / den;
    }

private:
    double beta_;
};

inline LocalOdeExample local_ode_example(double beta) { return LocalOdeExample(beta); }

}  // namespace fracreg
