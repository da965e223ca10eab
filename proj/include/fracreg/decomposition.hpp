#pragma once

// Semi-analytic evaluation of (-Δ)^s near the origin for functions equal to
// sign(x)|x|^r (+ x) on [-1, 1]:
//   (-Δ)^s v(x) = c1 x^{r-2s} + c2 x^r + c_s G(x) - c_s H(x),  0 < x <= 1/2,
// and the closed-form pieces of (-Δ)^s |x| cut off at 1.

#include <cmath>
#include <vector>

#include "fracreg/errors.hpp"
#include "fracreg/fraclap.hpp"
#include "fracreg/params.hpp"
#include "fracreg/piece.hpp"
#include "fracreg/piecewise.hpp"
#include "fracreg/quadrature.hpp"

namespace fracreg {

namespace detail {

// (1 + w)^r - (1 - w)^r for 0 <= w <= 1.
inline double odd_binomial_difference(double r, double w) {
    return std::expm1(r * std::log1p(w)) - std::expm1(r * std::log1p(-w));
}

// ((t+1)^r - (t-1)^r) / t^{1+2s} for t >= 1.
inline double phi_integrand(double t, double r, double s) {
    return std::pow(t, r - 1.0 - 2.0 * s) * odd_binomial_difference(r, 1.0 / t);
}

// ∫_T^∞ ((t+1)^r - (t-1)^r) / t^{1+2s} dt for T > 1 from the binomial series
// (t+1)^r - (t-1)^r = 2 Σ_{k odd} C(r,k) t^{r-k}.
inline double phi_series(double T, double r, double s) {
    const double inv2 = 1.0 / (T * T);
    double binom = r;         // C(r, k)
    double power = 1.0 / T;   // T^{-k}
    double sum = 0.0;
    for (int k = 1; k < 400; k += 2) {
        const double term = binom * power / (k + 2.0 * s - r);
        sum += term;
        if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
        binom *= (r - k) * (r - k - 1.0) / ((k + 1.0) * (k + 2.0));
        power *= inv2;
    }
    return 2.0 * std::pow(T, r - 2.0 * s) * sum;
}

inline void check_decomposition_exponents(double r, double s) {
    if (!(s > 0.0 && s < 1.0)) throw DomainError("decomposition: s must lie in (0, 1)");
    if (!(r > 0.0 && r < 1.0 + 2.0 * s)) throw DomainError("decomposition: r must lie in (0, 1 + 2s)");
}

}  // namespace detail

/// Φ(a) = ∫_a^∞ ((t+1)^r - (t-1)^r) / t^{1+2s} dt for a >= 1.
inline quad::QuadResult phi_integral(double a, double r, double s, const QuadratureConfig& cfg = {}) {
    detail::check_decomposition_exponents(r, s);
    if (!(a >= 1.0)) throw DomainError("phi_integral: a must be >= 1");
    constexpr double kSeriesStart = 4.0;
    if (a >= kSeriesStart) return {detail::phi_series(a, r, s), 0.0, 0, true};
    // (t - 1)^r has an unbounded derivative at t = 1: grade the mesh toward a.
    std::vector<double> breaks{a};
    std::vector<double> graded;
    for (int k = 1; k <= 40; ++k) graded.push_back(a + (kSeriesStart - a) * std::ldexp(1.0, -k));
    breaks.insert(breaks.end(), graded.rbegin(), graded.rend());
    breaks.push_back(kSeriesStart);
    auto q = quad::integrate_panels([&](double t) { return detail::phi_integrand(t, r, s); },
                                    std::span<const double>(breaks), cfg.tolerance());
    q.value += detail::phi_series(kSeriesStart, r, s);
    return q;
}

/// G(x) = x^{r-2s} Φ(1/(2x)), G(0) = 0.
inline EvalResult G_eval(double x, double r, double s, const QuadratureConfig& cfg = {}) {
    detail::check_decomposition_exponents(r, s);
    if (!(x >= 0.0 && x <= 0.5)) throw DomainError("G_eval: x must lie in [0, 1/2]");
    EvalResult out;
    out.evaluator = Evaluator::Decomposition;
    if (x == 0.0) return out;
    const auto q = phi_integral(0.5 / x, r, s, cfg);
    const double w = std::pow(x, r - 2.0 * s);
    out.value = w * q.value;
    out.est_error = w * q.error + 4.0 * std::numeric_limits<double>::epsilon() * std::abs(out.value);
    out.subdivisions = q.subdivisions;
    return out;
}

struct DecompositionConstants {
    double r;
    double s;
    double c1;
    double c2;
    double qbar2;
    double qbar2_error;
};

/// c2 = -c_s 2^{2s}/s, c1 = -c_s Q̄2 with
/// Q̄2 = ∫_0^1 ((1+t)^r + (1-t)^r - 2)/t^{1+2s} dt - 1/s + Φ(1).
inline DecompositionConstants decomposition_constants(double r, double s, const QuadratureConfig& cfg = {}) {
    detail::check_decomposition_exponents(r, s);
    if (r == 2.0 * s) throw DomainError("decomposition_constants: r must differ from 2s");
    const double cs = riesz_constant(s).value;

    std::vector<double> breaks{0.0};
    for (int k = 50; k >= 2; --k) breaks.push_back(std::ldexp(1.0, -k));
    breaks.push_back(0.5);
    for (int k = 2; k <= 50; ++k) breaks.push_back(1.0 - std::ldexp(1.0, -k));
    breaks.push_back(1.0);
    auto q2 = quad::integrate_panels(
        [&](double t) {
            if (t <= 0.0) return 0.0;
            return detail::even_binomial_excess(r, t) * std::pow(t, -1.0 - 2.0 * s);
        },
        std::span<const double>(breaks), cfg.tolerance());
    const auto phi1 = phi_integral(1.0, r, s, cfg);
    if (!q2.converged || !phi1.converged) {
        throw AccuracyError("decomposition_constants: quadrature did not converge", q2.value + phi1.value,
                            q2.error + phi1.error);
    }
    const double qbar2 = q2.value - 1.0 / s + phi1.value;
    return {r, s, -cs * qbar2, -cs * std::pow(2.0, 2.0 * s) / s, qbar2, q2.error + phi1.error};
}

/// Exponent r of the power law on [0, 1] if u has the shape the decomposition
/// applies to: odd, unscaled, first piece |x|^r (+ x) on [0, 1].
inline double decomposition_exponent(const PiecewiseFunction& u) {
    const auto& head = u.pieces().front();
    const auto* p = std::get_if<PowerTerm>(&head.kind);
    if (u.symmetry() != Symmetry::OddAboutZero || u.scale() != 1.0 || p == nullptr || p->coeff != 1.0 ||
        !(p->slope == 0.0 || p->slope == 1.0) || head.lo != 0.0 || head.hi < 1.0) {
        throw PreconditionError("decomposition_eval: u is not a power law (plus identity) on [-1, 1]");
    }
    return p->exponent;
}

/// (-Δ)^s u(x) for 0 < x <= 1/2 assembled from c1, c2, G and H. For u = v + x
/// on [-1, 1] the identity part contributes only through H, so one formula
/// serves both shapes with H taken from u itself.
inline EvalResult decomposition_eval(const PiecewiseFunction& u, double x, const FracParams& params,
                                     const DecompositionConstants& k, const QuadratureConfig& cfg = {}) {
    if (!(x > 0.0 && x <= 0.5)) throw DomainError("decomposition_eval: x must lie in (0, 1/2]");
    const double r = decomposition_exponent(u);
    if (r != k.r || params.s != k.s) throw PreconditionError("decomposition_eval: constants do not match u");
    const double s = params.s;
    const double cs = riesz_constant(s).value;
    QuadratureConfig half = cfg;
    half.split_radius = 0.5;
    const EvalResult g = G_eval(x, r, s, cfg);
    const EvalResult h = H_eval(u, x, s, half);
    const double xp = std::pow(x, r - 2.0 * s);
    EvalResult out;
    out.evaluator = Evaluator::Decomposition;
    out.value = k.c1 * xp + k.c2 * std::pow(x, r) + cs * g.value - cs * h.value;
    out.est_error = cs * (g.est_error + h.est_error + k.qbar2_error * xp) +
                    8.0 * std::numeric_limits<double>::epsilon() * (std::abs(k.c1 * xp) + cs * std::abs(h.value));
    out.subdivisions = g.subdivisions + h.subdivisions;
    out.tail_contribution = -cs * h.value;
    return out;
}

inline EvalResult decomposition_eval(const PiecewiseFunction& u, double x, const FracParams& params,
                                     const QuadratureConfig& cfg = {}) {
    const double r = decomposition_exponent(u);
    return decomposition_eval(u, x, params, decomposition_constants(r, params.s, cfg), cfg);
}

/// The four pieces of ∫ (u(x+y) - u(x))/|y|^{1+2s} dy for u = |x| cut off at 1,
/// over y < -1-x, -1-x < y < -x, -x < y < 1-x (principal value), y > 1-x.
struct QIntegrals {
    double q1;
    double q2;
    double q3;
    double q4;
    double sum() const { return q1 + q2 + q3 + q4; }
};

inline QIntegrals closed_form_Q_integrals(double x, double s) {
    if (!(x >= 0.0 && x <= 0.5)) throw DomainError("closed_form_Q_integrals: x must lie in [0, 1/2]");
    if (!(s > 0.0 && s < 1.0)) throw DomainError("closed_form_Q_integrals: s must lie in (0, 1)");
    if (!(2.0 * s < 1.0)) throw DomainError("closed_form_Q_integrals: requires 2s < 1");
    const double a = 1.0 - 2.0 * s;
    const double xa = std::pow(x, a);
    QIntegrals q;
    q.q1 = (1.0 - x) / (2.0 * s * std::pow(1.0 + x, 2.0 * s));
    q.q2 = (x * std::pow(1.0 + x, -2.0 * s) - xa) / s - (xa - std::pow(1.0 + x, a)) / a;
    q.q3 = (std::pow(1.0 - x, a) - xa) / a;
    q.q4 = std::pow(1.0 - x, a) / (2.0 * s);
    return q;
}

/// (-Δ)^s of abs_cutoff() on [-1/2, 1/2] in closed form, and its split into the
/// singular part c_s |x|^{1-2s}/(s(1-2s)) and a smooth remainder.
struct AbsCutoffLaplacian {
    double value;
    double singular;
    double smooth;
};

inline AbsCutoffLaplacian abs_cutoff_laplacian(double x, double s) {
    const double ax = std::abs(x);
    const QIntegrals q = closed_form_Q_integrals(ax, s);
    const double cs = riesz_constant(s).value;
    const double value = -cs * q.sum();
    const double singular = cs * std::pow(ax, 1.0 - 2.0 * s) / (s * (1.0 - 2.0 * s));
    return {value, singular, value - singular};
}

}  // namespace fracreg
