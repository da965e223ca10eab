#pragma once

// Adaptive Gauss–Kronrod quadrature over a partition of panels.
//
// The integrands handled in this library are smooth on each panel between
// known breakpoints, with at worst algebraic singularities at panel ends, so
// a globally adaptive 7/15-point Gauss–Kronrod pair (QUADPACK QAG style,
// without epsilon extrapolation) is sufficient.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <span>
#include <stdexcept>
#include <vector>

namespace fracreg::quad {

struct RuleResult {
    double value = 0.0;
    double error = 0.0;
};

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    std::size_t subdivisions = 0;
    bool converged = true;

    QuadResult& operator+=(const QuadResult& other) {
        value += other.value;
        error += other.error;
        subdivisions += other.subdivisions;
        converged = converged && other.converged;
        return *this;
    }
};

struct Tolerance {
    double abs_tol = 1e-10;
    double rel_tol = 1e-9;
    std::size_t max_subdivisions = std::size_t{1} << 14;
};

namespace detail {

// Abscissae and weights of the 15-point Kronrod extension of the 7-point
// Gauss rule (Fullerton's 80-digit values, as distributed with QUADPACK).
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

}  // namespace detail

/// One application of the GK15 pair on [a, b] with QUADPACK's error scaling.
template <typename F>
RuleResult gauss_kronrod15(const F& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double abs_half = std::abs(half);

    double fv1[7];
    double fv2[7];
    const double fc = f(center);
    double result_gauss = fc * detail::kWg[3];
    double result_kronrod = fc * detail::kWgk[7];
    double result_abs = std::abs(result_kronrod);

    for (int j = 0; j < 3; ++j) {
        const int jtw = 2 * j + 1;
        const double dx = half * detail::kXgk[jtw];
        const double f1 = f(center - dx);
        const double f2 = f(center + dx);
        fv1[jtw] = f1;
        fv2[jtw] = f2;
        result_gauss += detail::kWg[j] * (f1 + f2);
        result_kronrod += detail::kWgk[jtw] * (f1 + f2);
        result_abs += detail::kWgk[jtw] * (std::abs(f1) + std::abs(f2));
    }
    for (int j = 0; j < 4; ++j) {
        const int jtwm1 = 2 * j;
        const double dx = half * detail::kXgk[jtwm1];
        const double f1 = f(center - dx);
        const double f2 = f(center + dx);
        fv1[jtwm1] = f1;
        fv2[jtwm1] = f2;
        result_kronrod += detail::kWgk[jtwm1] * (f1 + f2);
        result_abs += detail::kWgk[jtwm1] * (std::abs(f1) + std::abs(f2));
    }

    const double mean = 0.5 * result_kronrod;
    double result_asc = detail::kWgk[7] * std::abs(fc - mean);
    for (int j = 0; j < 7; ++j) {
        result_asc += detail::kWgk[j] * (std::abs(fv1[j] - mean) + std::abs(fv2[j] - mean));
    }

    const double value = result_kronrod * half;
    result_abs *= abs_half;
    result_asc *= abs_half;
    double err = std::abs((result_kronrod - result_gauss) * half);
    if (result_asc != 0.0 && err != 0.0) {
        err = result_asc * std::min(1.0, std::pow(200.0 * err / result_asc, 1.5));
    }
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (result_abs > std::numeric_limits<double>::min() / (50.0 * eps)) {
        err = std::max(50.0 * eps * result_abs, err);
    }
    return {value, err};
}

/// Globally adaptive integration over consecutive panels
/// [breaks[0], breaks[1]], ..., [breaks[n-2], breaks[n-1]]. The panel with the
/// largest error estimate is bisected until the summed error meets
/// max(abs_tol, rel_tol * |value|) or the subdivision budget is used up.
template <typename F>
QuadResult integrate_panels(const F& f, std::span<const double> breaks, const Tolerance& tol = {}) {
    struct Interval {
        double a;
        double b;
        double value;
        double error;
        bool operator<(const Interval& other) const { return error < other.error; }
    };

    QuadResult out;
    if (breaks.size() < 2) {
        return out;
    }
    std::vector<Interval> storage;
    storage.reserve(breaks.size() + 64);
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        const double a = breaks[i];
        const double b = breaks[i + 1];
        if (!(b > a)) {
            continue;
        }
        const RuleResult r = gauss_kronrod15(f, a, b);
        storage.push_back({a, b, r.value, r.error});
    }
    std::priority_queue<Interval> heap(std::less<Interval>{}, std::move(storage));

    auto totals = [&heap]() {
        // Kahan-compensated totals over the current partition.
        double sum = 0.0, comp = 0.0, err = 0.0;
        auto copy = heap;
        while (!copy.empty()) {
            const Interval& it = copy.top();
            const double y = it.value - comp;
            const double t = sum + y;
            comp = (t - sum) - y;
            sum = t;
            err += it.error;
            copy.pop();
        }
        return std::pair{sum, err};
    };

    double value = 0.0;
    double error = 0.0;
    {
        auto [v, e] = totals();
        value = v;
        error = e;
    }

    std::size_t splits = 0;
    constexpr double eps = std::numeric_limits<double>::epsilon();
    while (!heap.empty() && error > std::max(tol.abs_tol, tol.rel_tol * std::abs(value))) {
        if (splits >= tol.max_subdivisions) {
            out.converged = false;
            break;
        }
        Interval worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b) ||
            (worst.b - worst.a) <= 8.0 * eps * std::max(std::abs(worst.a), std::abs(worst.b))) {
            // Interval can no longer be split in floating point; accept what we have.
            out.converged = error <= std::max(tol.abs_tol, tol.rel_tol * std::abs(value)) * 10.0;
            break;
        }
        heap.pop();
        const RuleResult left = gauss_kronrod15(f, worst.a, mid);
        const RuleResult right = gauss_kronrod15(f, mid, worst.b);
        heap.push({worst.a, mid, left.value, left.error});
        heap.push({mid, worst.b, right.value, right.error});
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        ++splits;
        if ((splits & 255u) == 0u) {
            auto [v, e] = totals();
            value = v;
            error = e;
        }
    }
    auto [v, e] = totals();
    out.value = v;
    out.error = e;
    out.subdivisions = splits;
    return out;
}

template <typename F>
QuadResult integrate(const F& f, double a, double b, const Tolerance& tol = {}) {
    const double breaks[2] = {a, b};
    return integrate_panels(f, std::span<const double>(breaks, 2), tol);
}

/// ∫_a^b f where f(y) ~ |y - a|^alpha near a (alpha > -1). The substitution
/// y = a + (b - a) t^q with q = 1/(1 + alpha) removes the leading singularity.
template <typename F>
QuadResult integrate_left_singular(const F& f, double a, double b, double alpha,
                                   const Tolerance& tol = {}) {
    if (!(alpha > -1.0)) {
        throw std::invalid_argument("integrate_left_singular: exponent must exceed -1");
    }
    const double q = 1.0 / (1.0 + alpha);
    const double len = b - a;
    auto g = [&](double t) {
        if (t <= 0.0) return 0.0;
        const double tq = std::pow(t, q);
        return f(a + len * tq) * len * q * tq / t;
    };
    return integrate(g, 0.0, 1.0, tol);
}

/// ∫_a^b f where f(y) ~ |b - y|^alpha near b.
template <typename F>
QuadResult integrate_right_singular(const F& f, double a, double b, double alpha,
                                    const Tolerance& tol = {}) {
    auto reflected = [&](double y) { return f(a + b - y); };
    return integrate_left_singular(reflected, a, b, alpha, tol);
}

/// ∫_a^∞ f for a > 0 where f(y) decays like y^(-decay), decay > 1. Uses
/// y = a w^(-p), p = 1/(decay - 1), which maps the tail to a bounded
/// integrand on (0, 1].
template <typename F>
QuadResult integrate_to_infinity(const F& f, double a, double decay, const Tolerance& tol = {}) {
    if (!(a > 0.0) || !(decay > 1.0)) {
        throw std::invalid_argument("integrate_to_infinity: need a > 0 and decay > 1");
    }
    const double p = 1.0 / (decay - 1.0);
    auto g = [&](double w) {
        if (w <= 0.0) return 0.0;
        const double y = a * std::pow(w, -p);
        if (!std::isfinite(y)) return 0.0;
        return f(y) * p * y / w;
    };
    return integrate(g, 0.0, 1.0, tol);
}

}  // namespace fracreg::quad
