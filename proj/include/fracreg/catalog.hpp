#pragma once

// The concrete functions of the counterexample constructions.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <sstream>
#include <utility>
#include <vector>

#include "fracreg/errors.hpp"
#include "fracreg/params.hpp"
#include "fracreg/piece.hpp"
#include "fracreg/piecewise.hpp"

namespace fracreg {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Odd function equal to x^r on [0, 1] and to ±1 outside [-1, 1].
inline PiecewiseFunction power_cutoff(double r) {
    if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("power_cutoff: r must be positive");
    return PiecewiseFunction({Piece{PowerTerm{1.0, r, 0.0}, 0.0, 1.0}, Piece{ConstantTerm{1.0}, 1.0, kInf}},
                             Symmetry::OddAboutZero);
}

/// Even function equal to |x| on [-1, 1] and to 1 outside.
inline PiecewiseFunction abs_cutoff() {
    return PiecewiseFunction({Piece{LinearTerm{1.0, 0.0}, 0.0, 1.0}, Piece{ConstantTerm{1.0}, 1.0, kInf}},
                             Symmetry::EvenAboutZero);
}

/// Odd function sign(x)|x|^(2s+β) + x on [-1, 1], ±2 outside. Regime II only.
inline PiecewiseFunction signed_power_plus_linear(const FracParams& params) {
    if (params.regime != Regime::RegimeII) {
        throw DomainError("signed_power_plus_linear: requires 2s > 1 - beta");
    }
    const double r = 2.0 * params.s + params.beta;
    return PiecewiseFunction({Piece{PowerTerm{1.0, r, 1.0}, 0.0, 1.0}, Piece{ConstantTerm{2.0}, 1.0, kInf}},
                             Symmetry::OddAboutZero);
}

/// Even periodic function cos(2πx/P) stored on [0, P/2].
inline PiecewiseFunction cosine_wave(double period) {
    if (!(period > 0.0)) throw DomainError("cosine_wave: period must be positive");
    return PiecewiseFunction({Piece{CosineTerm{1.0, 2.0 * std::numbers::pi / period, 0.0}, 0.0, 0.5 * period}},
                             Symmetry::EvenAboutZero, std::nullopt, period);
}

namespace detail {

inline double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// Solve a small dense system by Gaussian elimination with partial pivoting.
inline std::vector<double> solve_dense(std::vector<std::vector<double>> a, std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t row = col + 1; row < n; ++row) {
            if (std::abs(a[row][col]) > std::abs(a[piv][col])) piv = row;
        }
        std::swap(a[col], a[piv]);
        std::swap(b[col], b[piv]);
        if (a[col][col] == 0.0) throw ConstructionError("solve_dense: singular system");
        for (std::size_t row = col + 1; row < n; ++row) {
            const double m = a[row][col] / a[col][col];
            for (std::size_t k = col; k < n; ++k) a[row][k] -= m * a[col][k];
            b[row] -= m * b[col];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        double acc = b[i];
        for (std::size_t k = i + 1; k < n; ++k) acc -= a[i][k] * x[k];
        x[i] = acc / a[i][i];
    }
    return x;
}

}  // namespace detail

/// Polynomial of degree 2m+1 on [a, b] (stored about origin a) whose value
/// and first m derivatives equal left[j] at a and right[j] at b.
inline PolynomialTerm hermite_bridge(double a, double b, std::span<const double> left, std::span<const double> right) {
    const int m = static_cast<int>(left.size()) - 1;
    if (m < 0 || left.size() != right.size()) {
        throw PreconditionError("hermite_bridge: mismatched derivative data");
    }
    const std::size_t n = 2 * static_cast<std::size_t>(m) + 2;
    std::vector<double> c(n, 0.0);
    for (int j = 0; j <= m; ++j) c[static_cast<std::size_t>(j)] = left[static_cast<std::size_t>(j)] / detail::factorial(j);

    const double h = b - a;
    // Unknowns c_{m+1..2m+1}; equations are derivatives 0..m at t = h.
    const std::size_t nu = static_cast<std::size_t>(m) + 1;
    std::vector<std::vector<double>> mat(nu, std::vector<double>(nu, 0.0));
    std::vector<double> rhs(nu, 0.0);
    for (int j = 0; j <= m; ++j) {
        double known = 0.0;
        for (int k = j; k <= m; ++k) {
            known += c[static_cast<std::size_t>(k)] * detail::factorial(k) / detail::factorial(k - j) * std::pow(h, k - j);
        }
        rhs[static_cast<std::size_t>(j)] = right[static_cast<std::size_t>(j)] - known;
        for (int k = m + 1; k <= 2 * m + 1; ++k) {
            mat[static_cast<std::size_t>(j)][static_cast<std::size_t>(k - m - 1)] =
                detail::factorial(k) / detail::factorial(k - j) * std::pow(h, k - j);
        }
    }
    const std::vector<double> tail = detail::solve_dense(std::move(mat), std::move(rhs));
    for (std::size_t i = 0; i < nu; ++i) c[nu + i] = tail[i];
    return PolynomialTerm{a, std::move(c)};
}

/// Shape parameters for the 8-periodic profiles.
struct ProfileShape {
    double exponent;      ///< r of the power law on (0, 1)
    double slope;         ///< linear term added on (0, 1) (0 in regime I, 1 in regime II)
    double delta = 0.25;  ///< half-width of the quadratic cap around x = 2
    int blend_order = 2;  ///< derivatives matched at x = 1 and x = 2 - delta
    bool bound_slope = true;  ///< require sup u' on (1, 2) <= u'(1-)
};

/// 8-periodic, odd about 0, even about 2: z^r + slope z on [0, 1), a Hermite
/// bridge on [1, 2 - delta), and the cap -(z - 2)^2 + cap_height on [2 - delta, 2].
inline PiecewiseFunction build_periodic_profile(const ProfileShape& shape, double cap_height) {
    if (!(shape.delta > 0.0 && shape.delta <= 0.5)) {
        throw DomainError("periodic profile: delta must lie in (0, 1/2]");
    }
    if (shape.blend_order < 1) throw DomainError("periodic profile: blend order must be >= 1");
    const PowerTerm power{1.0, shape.exponent, shape.slope};
    const double a = 1.0;
    const double b = 2.0 - shape.delta;
    const std::size_t m = static_cast<std::size_t>(shape.blend_order);
    std::vector<double> left(m + 1), right(m + 1, 0.0);
    for (std::size_t j = 0; j <= m; ++j) left[j] = piece_derivative(power, a, static_cast<int>(j));
    right[0] = cap_height - shape.delta * shape.delta;
    right[1] = 2.0 * shape.delta;
    if (m >= 2) right[2] = -2.0;
    PolynomialTerm bridge = hermite_bridge(a, b, left, right);
    return PiecewiseFunction({Piece{power, 0.0, a}, Piece{std::move(bridge), a, b},
                              Piece{QuadraticTerm{2.0, -1.0, cap_height}, b, 2.0}},
                             Symmetry::OddAboutZero, 2.0, 8.0);
}

namespace detail {

struct SlopeRange {
    double min_slope;
    double max_slope;
    double argmax;
};

// Extreme values of the bridge derivative on a fine grid of [1, 2 - delta].
inline SlopeRange bridge_slopes(const PiecewiseFunction& u, int samples = 8000) {
    const Piece& bridge = u.pieces()[1];
    SlopeRange out{kInf, -kInf, bridge.lo};
    for (int i = 0; i <= samples; ++i) {
        const double z = bridge.lo + (bridge.hi - bridge.lo) * i / samples;
        const double d = piece_derivative(bridge.kind, z, 1);
        out.min_slope = std::min(out.min_slope, d);
        if (d > out.max_slope) {
            out.max_slope = d;
            out.argmax = z;
        }
    }
    return out;
}

}  // namespace detail

/// Pick the cap height u(2) so the bridge is increasing with slope at most
/// u'(1-) = r + slope. The admissible heights form an interval; its edges are
/// located by bisection and the midpoint is used. Without the slope bound the
/// upper edge is the top of the scanned range.
inline PiecewiseFunction select_periodic_profile(const ProfileShape& shape) {
    const double u1 = 1.0 + shape.slope;
    const double bound = shape.exponent + shape.slope;
    const double d2 = shape.delta * shape.delta;
    const double span = 1.0 - shape.delta;
    const double lo = u1 + d2;
    const double hi = u1 + bound * span + d2;

    auto increasing = [&](double cap) {
        return detail::bridge_slopes(build_periodic_profile(shape, cap)).min_slope > 0.0;
    };
    auto bounded = [&](double cap) {
        return detail::bridge_slopes(build_periodic_profile(shape, cap)).max_slope <= bound * (1.0 + 1e-13);
    };

    // Coarse scan for an admissible height.
    constexpr int kScan = 400;
    double found = std::numeric_limits<double>::quiet_NaN();
    int admissible = 0;
    for (int i = 1; i < kScan; ++i) {
        const double cap = lo + (hi - lo) * i / kScan;
        if (increasing(cap) && (!shape.bound_slope || bounded(cap))) {
            ++admissible;
            if (std::isnan(found)) found = cap;
        }
    }
    if (std::isnan(found)) {
        std::ostringstream msg;
        msg << "periodic profile: no cap height in [" << lo << ", " << hi
            << "] gives an increasing bridge with slope <= " << bound << " (r=" << shape.exponent
            << ", delta=" << shape.delta << ", blend order=" << shape.blend_order
            << "; the cap slope 2*delta must not exceed " << bound << ")";
        throw ConstructionError(msg.str());
    }
    // The bridge derivative is affine in the cap height with a nonnegative
    // coefficient, so both admissibility conditions are monotone in it.
    double a = lo, b = found;
    for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (a + b);
        (increasing(mid) ? b : a) = mid;
    }
    const double cap_lo = b;
    if (!shape.bound_slope) return build_periodic_profile(shape, 0.5 * (cap_lo + hi));
    a = found;
    b = hi;
    for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (a + b);
        (bounded(mid) ? a : b) = mid;
    }
    const double cap_hi = a;
    return build_periodic_profile(shape, 0.5 * (cap_lo + cap_hi));
}

/// Regime-I periodic profile with r = 2s/(1 - β).
inline PiecewiseFunction periodic_profile(const FracParams& params, double delta = 0.25, int blend_order = 2) {
    if (params.regime != Regime::RegimeI_strict) {
        throw DomainError("periodic_profile: requires 2s < 1 - beta");
    }
    return select_periodic_profile({params.r, 0.0, delta, blend_order});
}

/// Regime-II periodic analogue: sign(x)|x|^(2s+β) + x on (-1, 1). Only
/// monotonicity on (0, 2) is imposed on the bridge.
inline PiecewiseFunction periodic_profile_ii(const FracParams& params, double delta = 0.25, int blend_order = 2) {
    if (params.regime != Regime::RegimeII) {
        throw DomainError("periodic_profile_ii: requires 2s > 1 - beta");
    }
    return select_periodic_profile({params.r, 1.0, delta, blend_order, false});
}

/// Cap height u(2) of a periodic profile.
inline double cap_height(const PiecewiseFunction& u) { return u(2.0); }

/// Split u = v + φ where v carries the pure power law and φ is the truncated
/// identity (x on [-1, 1], ±1 beyond, extended with the same symmetries).
inline std::pair<PiecewiseFunction, PiecewiseFunction> split_v_phi(const PiecewiseFunction& u) {
    const auto& pieces = u.pieces();
    const auto* head = std::get_if<PowerTerm>(&pieces.front().kind);
    if (u.symmetry() != Symmetry::OddAboutZero || head == nullptr || head->slope != 1.0 ||
        pieces.front().lo != 0.0 || pieces.front().hi != 1.0 || u.scale() != 1.0) {
        throw PreconditionError("split_v_phi: expected an odd power-plus-identity profile on [0, 1]");
    }
    std::vector<Piece> v_pieces;
    std::vector<Piece> phi_pieces;
    v_pieces.push_back(Piece{PowerTerm{head->coeff, head->exponent, 0.0}, 0.0, 1.0});
    phi_pieces.push_back(Piece{LinearTerm{1.0, 0.0}, 0.0, 1.0});
    for (std::size_t i = 1; i < pieces.size(); ++i) {
        const Piece& p = pieces[i];
        PieceKind shifted = p.kind;
        if (auto* c = std::get_if<ConstantTerm>(&shifted)) {
            c->value -= 1.0;
        } else if (auto* poly = std::get_if<PolynomialTerm>(&shifted)) {
            poly->coeffs[0] -= 1.0;
        } else if (auto* q = std::get_if<QuadraticTerm>(&shifted)) {
            q->offset -= 1.0;
        } else if (auto* l = std::get_if<LinearTerm>(&shifted)) {
            l->b -= 1.0;
        } else {
            throw PreconditionError("split_v_phi: unsupported piece beyond x = 1");
        }
        v_pieces.push_back(Piece{std::move(shifted), p.lo, p.hi});
    }
    const double phi_end = pieces.back().hi;
    phi_pieces.push_back(Piece{ConstantTerm{1.0}, 1.0, phi_end});
    return {PiecewiseFunction(std::move(v_pieces), u.symmetry(), u.mirror(), u.base_period()),
            PiecewiseFunction(std::move(phi_pieces), u.symmetry(), u.mirror(), u.base_period())};
}

struct RescaledProfile {
    PiecewiseFunction u;     ///< x ↦ u(lambda x), 2L-periodic
    double lambda;
    double laplacian_factor; ///< lambda^(2s)
};

/// Rescale a periodic profile to period 2L. (-Δ)^s of the result at x equals
/// laplacian_factor * (-Δ)^s u at lambda * x.
inline RescaledProfile rescale_periodic(const PiecewiseFunction& u, double half_period, double s) {
    if (!u.is_periodic()) throw PreconditionError("rescale_periodic: function is not periodic");
    if (!(half_period > 0.0)) throw DomainError("rescale_periodic: L must be positive");
    const double lambda = *u.period() / (2.0 * half_period);
    return {u.rescaled(lambda), lambda, std::pow(lambda, 2.0 * s)};
}

}  // namespace fracreg
