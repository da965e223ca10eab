#pragma once

// Empirical regularity: Hölder seminorms of sampled curves, local exponents
// fitted on a geometric ladder of scales, and Lipschitz quotients.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <deque>
#include <optional>
#include <vector>

#include "fracreg/errors.hpp"
#include "fracreg/sampled.hpp"

namespace fracreg {

struct ModulusCurve {
    std::vector<double> scales;  ///< decreasing
    std::vector<double> values;  ///< ω(h)
};

struct HolderEstimate {
    double exponent;
    double seminorm_at_exponent;  ///< max |R(h)| / h^exponent over the ladder
    double h_min;
    double h_max;
    double fit_residual;          ///< max |log|R| - fitted line|
    std::size_t scales_used;
};

namespace detail {

inline void check_sorted_curve(const SampledCurve& c, const char* who) {
    if (c.x.size() != c.y.size()) throw PreconditionError(std::string(who) + ": x and y differ in length");
    if (c.x.size() < 2) throw PreconditionError(std::string(who) + ": need at least 2 samples");
    for (std::size_t i = 1; i < c.x.size(); ++i) {
        if (!(c.x[i] > c.x[i - 1])) {
            throw PreconditionError(std::string(who) + ": abscissae must be strictly increasing");
        }
    }
}

inline double pair_max(const SampledCurve& c, double beta, std::size_t window) {
    double best = 0.0;
    const std::size_t n = c.x.size();
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t end = std::min(n, i + window + 1);
        for (std::size_t j = i + 1; j < end; ++j) {
            const double q = std::abs(c.y[j] - c.y[i]) / std::pow(c.x[j] - c.x[i], beta);
            best = std::max(best, q);
        }
    }
    return best;
}

}  // namespace detail

/// max over pairs |f(x_i) - f(x_j)| / |x_i - x_j|^beta. All pairs for n <= 4096;
/// above that, pairs within an index window W, where W doubles until the
/// bound osc(f) / (min spacing of W-separated points)^beta on the remaining
/// pairs falls below the windowed maximum. The result is exact either way.
inline double holder_seminorm(const SampledCurve& samples, double beta) {
    detail::check_sorted_curve(samples, "holder_seminorm");
    if (!(beta > 0.0 && beta <= 1.0)) throw DomainError("holder_seminorm: beta must lie in (0, 1]");
    const std::size_t n = samples.x.size();
    if (n <= 4096) return detail::pair_max(samples, beta, n);

    const auto [lo, hi] = std::minmax_element(samples.y.begin(), samples.y.end());
    const double osc = *hi - *lo;
    for (std::size_t window = 64;; window *= 2) {
        if (window >= n) return detail::pair_max(samples, beta, n);
        const double inside = detail::pair_max(samples, beta, window);
        double gap = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i + window + 1 < n; ++i) gap = std::min(gap, samples.x[i + window + 1] - samples.x[i]);
        if (osc / std::pow(gap, beta) <= inside) return inside;
    }
}

/// ω(h) = max over pairs with |x_i - x_j| <= h of |y_i - y_j|, for each h.
inline ModulusCurve modulus_of_continuity(const SampledCurve& samples, std::vector<double> scales) {
    detail::check_sorted_curve(samples, "modulus_of_continuity");
    std::sort(scales.begin(), scales.end(), std::greater<>());
    ModulusCurve out{scales, {}};
    const std::size_t n = samples.x.size();
    for (double h : scales) {
        // Sliding-window max and min with monotone deques.
        std::deque<std::size_t> mx, mn;
        double best = 0.0;
        std::size_t lo = 0;
        for (std::size_t j = 0; j < n; ++j) {
            while (!mx.empty() && samples.y[mx.back()] <= samples.y[j]) mx.pop_back();
            while (!mn.empty() && samples.y[mn.back()] >= samples.y[j]) mn.pop_back();
            mx.push_back(j);
            mn.push_back(j);
            while (samples.x[j] - samples.x[lo] > h) ++lo;
            while (mx.front() < lo) mx.pop_front();
            while (mn.front() < lo) mn.pop_front();
            best = std::max(best, samples.y[mx.front()] - samples.y[mn.front()]);
        }
        out.values.push_back(best);
    }
    return out;
}

/// Local Hölder exponent of g at x0 from the remainder
///   order 0: R(h) = g(x0 + h) - g(x0)
///   order 1: R(h) = g(x0 + 2h) - 2 g(x0 + h) + g(x0)
/// on the ladder h_k = h_max 2^{-k} >= h_min (at least 12 scales). The first
/// order uses a forward second difference so that no derivative estimate
/// enters. Scales with |R| <= 1e-14 max(1, |g(x0)|) are dropped; with fewer
/// than 3 left the function is smoother than the window and nullopt is returned.
template <typename G>
std::optional<HolderEstimate> local_exponent(const G& g, double x0, double h_min = 1e-6, double h_max = 1e-1,
                                             int taylor_order = 0) {
    if (!(h_min > 0.0 && h_min < h_max)) throw PreconditionError("local_exponent: need 0 < h_min < h_max");
    if (taylor_order != 0 && taylor_order != 1) throw PreconditionError("local_exponent: taylor_order must be 0 or 1");
    std::vector<double> ladder;
    for (double h = h_max; h >= h_min * (1.0 - 1e-12); h *= 0.5) ladder.push_back(h);
    if (ladder.size() < 12) throw PreconditionError("local_exponent: window spans fewer than 12 scales");

    const double g0 = g(x0);
    const double floor = 1e-14 * std::max(1.0, std::abs(g0));
    std::vector<double> lx, ly, hs, rs;
    for (double h : ladder) {
        const double r = taylor_order == 0 ? g(x0 + h) - g0 : (g(x0 + 2.0 * h) - 2.0 * g(x0 + h)) + g0;
        if (std::abs(r) <= floor) continue;
        hs.push_back(h);
        rs.push_back(std::abs(r));
        lx.push_back(std::log(h));
        ly.push_back(std::log(std::abs(r)));
    }
    if (lx.size() < 3) return std::nullopt;

    const double m = static_cast<double>(lx.size());
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sx += lx[i];
        sy += ly[i];
    }
    const double mx = sx / m, my = sy / m;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    const double slope = sxy / sxx;
    const double icpt = my - slope * mx;
    HolderEstimate est{slope, 0.0, hs.back(), hs.front(), 0.0, lx.size()};
    for (std::size_t i = 0; i < lx.size(); ++i) {
        est.fit_residual = std::max(est.fit_residual, std::abs(ly[i] - (icpt + slope * lx[i])));
        est.seminorm_at_exponent = std::max(est.seminorm_at_exponent, rs[i] / std::pow(hs[i], slope));
    }
    return est;
}

/// max over adjacent samples of |Δy| / |Δx|.
inline double lipschitz_quotient_max(const SampledCurve& samples) {
    if (samples.x.size() != samples.y.size() || samples.x.size() < 2) {
        throw PreconditionError("lipschitz_quotient_max: need at least 2 samples");
    }
    double best = 0.0;
    for (std::size_t i = 1; i < samples.x.size(); ++i) {
        const double dx = samples.x[i] - samples.x[i - 1];
        if (dx == 0.0) throw PreconditionError("lipschitz_quotient_max: duplicate abscissae");
        best = std::max(best, std::abs(samples.y[i] - samples.y[i - 1]) / std::abs(dx));
    }
    return best;
}

}  // namespace fracreg
