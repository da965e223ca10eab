#pragma once

// Direct evaluation of the one-dimensional fractional Laplacian
//   (-Δ)^s u(x) = c_s ∫_0^∞ (2u(x) - u(x+y) - u(x-y)) / y^{1+2s} dy
// for exact piecewise functions, and the far-field term H of the G/H split.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <sstream>
#include <string_view>
#include <vector>

#include "fracreg/errors.hpp"
#include "fracreg/params.hpp"
#include "fracreg/piecewise.hpp"
#include "fracreg/quadrature.hpp"

namespace fracreg {

struct QuadratureConfig {
    double split_radius = 0.5;
    double abs_tol = 1e-10;
    double rel_tol = 1e-9;
    std::size_t max_subdivisions = std::size_t{1} << 14;
    int period_terms = 256;
    double pv_inner_exponent_guard = 1e-14;

    void validate() const {
        if (!(split_radius > 0.0 && split_radius <= 1.0)) {
            throw PreconditionError("QuadratureConfig: split_radius must lie in (0, 1]");
        }
        if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || max_subdivisions == 0 || !(pv_inner_exponent_guard > 0.0)) {
            throw PreconditionError("QuadratureConfig: tolerances and limits must be positive");
        }
        if (period_terms < 4 || period_terms % 4 != 0) {
            throw PreconditionError("QuadratureConfig: period_terms must be a positive multiple of 4");
        }
    }

    quad::Tolerance tolerance() const { return {abs_tol, rel_tol, max_subdivisions}; }
};

enum class Evaluator { Direct, Decomposition, Spectral };

inline std::string_view to_string(Evaluator e) {
    switch (e) {
        case Evaluator::Direct: return "direct";
        case Evaluator::Decomposition: return "decomposition";
        case Evaluator::Spectral: return "spectral";
    }
    return "direct";
}

struct EvalResult {
    double value = 0.0;
    double est_error = 0.0;
    Evaluator evaluator = Evaluator::Direct;
    std::size_t subdivisions = 0;
    double tail_contribution = 0.0;  ///< part of the value coming from beyond the integrated range
};

namespace detail {

// The second difference D(y) = 2u(x) - u(x+y) - u(x-y) at a fixed x, computed
// from piece formulas while x ± y stays inside the pieces adjacent to x.
class SecondDifference {
public:
    SecondDifference(const PiecewiseFunction& u, double x, double reach) : u_(u), x_(x) {
        u0_ = u(x);
        center_ = u.chart(x);
        for (double b : u.breakpoints_in(x - reach, x + reach)) {
            if (b > x) right_.push_back(b - x);
            else if (b < x) left_.push_back(x - b);
            else at_breakpoint_ = true;
        }
        std::reverse(left_.begin(), left_.end());
        if (!right_.empty()) right_chart_ = u.side_chart(x, +1, right_.front());
        if (!left_.empty()) left_chart_ = u.side_chart(x, -1, left_.front());
        nearest_ = std::numeric_limits<double>::infinity();
        if (!right_.empty()) nearest_ = std::min(nearest_, right_.front());
        if (!left_.empty()) nearest_ = std::min(nearest_, left_.front());
    }

    double operator()(double y) const {
        if (!at_breakpoint_ && y <= nearest_) {
            const Piece& p = u_.pieces()[center_.piece];
            return -center_.sigma * piece_second_difference(p.kind, center_.z, y * u_.scale());
        }
        return -(plus(y) + minus(y));
    }

    /// u(x + y) - u(x)
    double plus(double y) const {
        if (!right_.empty() && y <= right_.front()) {
            const Piece& p = u_.pieces()[right_chart_.piece];
            return right_chart_.sigma * piece_forward_difference(p.kind, right_chart_.z, right_chart_.dir * y);
        }
        return u_(x_ + y) - u0_;
    }

    /// u(x - y) - u(x)
    double minus(double y) const {
        if (!left_.empty() && y <= left_.front()) {
            const Piece& p = u_.pieces()[left_chart_.piece];
            return left_chart_.sigma * piece_forward_difference(p.kind, left_chart_.z, -left_chart_.dir * y);
        }
        return u_(x_ - y) - u0_;
    }

    /// Sorted distances |x - b| to breakpoints b != x.
    std::vector<double> distances() const {
        std::vector<double> out;
        out.reserve(left_.size() + right_.size());
        std::merge(left_.begin(), left_.end(), right_.begin(), right_.end(), std::back_inserter(out));
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    bool at_breakpoint() const noexcept { return at_breakpoint_; }
    double nearest() const noexcept { return nearest_; }
    double center_value() const noexcept { return u0_; }

private:
    const PiecewiseFunction& u_;
    double x_;
    double u0_ = 0.0;
    Chart center_;
    Chart right_chart_;
    Chart left_chart_;
    std::vector<double> right_;
    std::vector<double> left_;
    double nearest_ = 0.0;
    bool at_breakpoint_ = false;
};

struct PartialIntegral {
    quad::QuadResult quad;
    double sliver = 0.0;
    double sliver_error = 0.0;
};

// Fitted exponent rho of D(h) ~ C h^rho from D(h) and D(h/2).
inline double fitted_exponent(double d_h, double d_half) {
    if (d_h == 0.0 || d_half == 0.0 || (d_h > 0.0) != (d_half > 0.0)) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    return std::log2(d_h / d_half);
}

// ∫_{lo}^{hi} D(y) y^{-1-2s} dy with panels split at every breakpoint distance.
// When lo == 0 a geometric mesh is laid toward 0 and the last sliver is
// integrated from the fitted local power law.
inline PartialIntegral integrate_range(const SecondDifference& d, double s, double lo, double hi,
                                       const QuadratureConfig& cfg, std::span<const double> distances) {
    PartialIntegral out;
    const double e = 1.0 + 2.0 * s;
    auto integrand = [&](double y) { return d(y) * std::pow(y, -e); };

    std::vector<double> breaks;
    if (lo == 0.0) {
        const double first = std::min(d.nearest(), hi);
        const double h_min = cfg.pv_inner_exponent_guard;
        double h = first;
        std::vector<double> graded;
        while (h * 0.5 >= h_min) {
            h *= 0.5;
            graded.push_back(h);
        }
        const double h0 = graded.empty() ? first : graded.back();
        breaks.assign(graded.rbegin(), graded.rend());

        const double d0 = d(h0);
        const double d1 = d(0.5 * h0);
        if (d0 != 0.0 || d1 != 0.0) {
            double rho = 2.0;
            double rho_err = 0.0;
            if (d.at_breakpoint()) {
                rho = fitted_exponent(d0, d1);
                const double rho2 = fitted_exponent(d1, d(0.25 * h0));
                if (std::isnan(rho) || std::isnan(rho2)) {
                    throw SingularityError("second difference changes sign at the smallest scale", rho);
                }
                rho_err = std::abs(rho - rho2);
            }
            if (!(rho > 2.0 * s)) {
                std::ostringstream msg;
                msg << "non-integrable singularity: second difference exponent " << rho << " <= 2s = " << 2.0 * s;
                throw SingularityError(msg.str(), rho);
            }
            out.sliver = d0 * std::pow(h0, -2.0 * s) / (rho - 2.0 * s);
            // Interior points: D(h) = a h^2 (1 + O(h^2)). Breakpoints: the
            // power-law fit is exact up to the drift of rho between scales.
            const double rel = d.at_breakpoint() ? rho_err / (rho - 2.0 * s) : h0 * h0;
            out.sliver_error = std::abs(out.sliver) * (rel + 1e-12);
        }
        if (breaks.empty()) breaks.push_back(h0);
    } else {
        breaks.push_back(lo);
    }
    for (double b : distances) {
        if (b > breaks.back() && b < hi) breaks.push_back(b);
    }
    if (hi > breaks.back()) breaks.push_back(hi);
    out.quad = quad::integrate_panels(integrand, std::span<const double>(breaks), cfg.tolerance());
    return out;
}

// Mean of u over one period.
inline double period_mean(const PiecewiseFunction& u, const QuadratureConfig& cfg) {
    if (u.symmetry() == Symmetry::OddAboutZero) return 0.0;
    const double P = *u.period();
    std::vector<double> breaks = u.breakpoints_in(-0.5 * P, 0.5 * P);
    breaks.insert(breaks.begin(), -0.5 * P);
    breaks.push_back(0.5 * P);
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    const auto r = quad::integrate_panels([&](double x) { return u(x); }, std::span<const double>(breaks),
                                          cfg.tolerance());
    return r.value / P;
}

}  // namespace detail

/// ∫_lower^∞ (2u(x) - u(x+y) - u(x-y)) / y^{1+2s} dy with exact or
/// extrapolated tails. lower = 0 gives the principal-value integral.
inline EvalResult symmetric_tail_integral(const PiecewiseFunction& u, double x, double s, double lower,
                                          const QuadratureConfig& cfg = {}) {
    cfg.validate();
    if (!(s > 0.0 && s < 1.0)) throw DomainError("fractional Laplacian: s must lie in (0, 1)");
    if (!std::isfinite(x)) throw DomainError("fractional Laplacian: x must be finite");
    if (!(lower >= 0.0)) throw DomainError("fractional Laplacian: lower limit must be nonnegative");
    const double two_s = 2.0 * s;

    EvalResult res;
    auto check = [&](const quad::QuadResult& q) {
        res.subdivisions += q.subdivisions;
        return q.converged;
    };

    if (!u.is_periodic()) {
        const ConstantTail tail = *u.constant_tail();
        const std::vector<double> all = u.fundamental_breakpoints();
        double reach = 0.0;
        for (double b : all) reach = std::max(reach, std::abs(x - b / u.scale()));
        const detail::SecondDifference d(u, x, reach + 1.0);
        const std::vector<double> dist = d.distances();
        const double y0 = std::max(reach, lower);
        double value = 0.0;
        double err = 0.0;
        bool ok = true;
        if (y0 > lower) {
            const auto part = detail::integrate_range(d, s, lower, y0, cfg, dist);
            ok = check(part.quad);
            value = part.quad.value + part.sliver;
            err = part.quad.error + part.sliver_error;
        }
        const double far = (2.0 * d.center_value() - tail.plus - tail.minus);
        res.tail_contribution = (far == 0.0) ? 0.0 : far * std::pow(y0, -two_s) / two_s;
        res.value = value + res.tail_contribution;
        res.est_error = err + 4.0 * std::numeric_limits<double>::epsilon() * std::abs(res.tail_contribution);
        if (!ok) throw AccuracyError("fractional Laplacian: subdivision budget exhausted", res.value, res.est_error);
        return res;
    }

    // Periodic: integrate N periods with partial sums at N/4 and N/2, add the
    // exact contribution of the period mean and eliminate the oscillatory
    // Y^{-1-2s} and Y^{-2-2s} tail terms by Richardson extrapolation.
    const double P = *u.period();
    const int n = cfg.period_terms;
    const double y4 = P * (n / 4);
    const double y2 = P * (n / 2);
    const double y1 = P * n;
    if (!(lower < y4)) throw PreconditionError("fractional Laplacian: lower limit beyond the periodic window");
    const detail::SecondDifference d(u, x, y1 + P);
    const std::vector<double> dist = d.distances();

    const auto a = detail::integrate_range(d, s, lower, y4, cfg, dist);
    const auto b = detail::integrate_range(d, s, y4, y2, cfg, dist);
    const auto c = detail::integrate_range(d, s, y2, y1, cfg, dist);
    const bool ok = check(a.quad) & check(b.quad) & check(c.quad);

    const double mean_gap = 2.0 * d.center_value() - 2.0 * detail::period_mean(u, cfg);
    auto completed = [&](double partial, double y) { return partial + mean_gap * std::pow(y, -two_s) / two_s; };
    const double p4 = a.quad.value + a.sliver;
    const double p2 = p4 + b.quad.value;
    const double p1 = p2 + c.quad.value;
    const double j4 = completed(p4, y4);
    const double j2 = completed(p2, y2);
    const double j1 = completed(p1, y1);
    const double k1 = std::pow(2.0, 1.0 + two_s);
    const double k2 = std::pow(2.0, 2.0 + two_s);
    const double r1_hi = (k1 * j1 - j2) / (k1 - 1.0);
    const double r1_lo = (k1 * j2 - j4) / (k1 - 1.0);
    const double r2 = (k2 * r1_hi - r1_lo) / (k2 - 1.0);

    res.value = r2;
    res.tail_contribution = r2 - p1;
    res.est_error = a.quad.error + b.quad.error + c.quad.error + a.sliver_error + std::abs(r2 - r1_hi);
    if (!ok) throw AccuracyError("fractional Laplacian: subdivision budget exhausted", res.value, res.est_error);
    return res;
}

/// (-Δ)^s u(x) by direct quadrature of the symmetrized singular integral.
inline EvalResult frac_lap_direct(const PiecewiseFunction& u, double x, double s, const QuadratureConfig& cfg = {}) {
    const double cs = riesz_constant(s).value;
    EvalResult r = symmetric_tail_integral(u, x, s, 0.0, cfg);
    r.value *= cs;
    r.est_error *= cs;
    r.tail_contribution *= cs;
    r.evaluator = Evaluator::Direct;
    return r;
}

/// H(x) = ∫_{|y| >= R} (u(x+y) - u(x)) / |y|^{1+2s} dy with R = cfg.split_radius.
inline EvalResult H_eval(const PiecewiseFunction& u, double x, double s, const QuadratureConfig& cfg = {}) {
    EvalResult r = symmetric_tail_integral(u, x, s, cfg.split_radius, cfg);
    r.value = -r.value;
    r.tail_contribution = -r.tail_contribution;
    return r;
}

}  // namespace fracreg
