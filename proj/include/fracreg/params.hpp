#pragma once

// Exponent algebra for the semilinear problem (-Δ)^s u = f(u) with f ∈ C^β,
// and the normalization constant of the one-dimensional fractional Laplacian.

#include <cmath>
#include <numbers>
#include <string>
#include <string_view>

#include "fracreg/errors.hpp"

namespace fracreg {

enum class Regime {
    RegimeI_strict,    ///< 2s < 1 - β
    RegimeI_boundary,  ///< 2s = 1 - β
    RegimeII,          ///< 2s > 1 - β
};

inline std::string_view to_string(Regime regime) {
    switch (regime) {
        case Regime::RegimeI_strict: return "regime-I-strict";
        case Regime::RegimeI_boundary: return "regime-I-boundary";
        case Regime::RegimeII: return "regime-II";
    }
    return "unknown";
}

/// The pair (s, β) together with the sharp Hölder exponent r of solutions.
struct FracParams {
    double s;
    double beta;
    double r;
    Regime regime;
};

struct RieszConstant {
    double s;
    double value;
};

/// Γ(x) for x > 0. Backed by the C library's tgamma, which is accurate to a
/// few ulps on the range used here (arguments stay below 2.5).
inline double gamma_function(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw DomainError("gamma_function: argument must be positive and finite");
    }
    return std::tgamma(x);
}

/// c_s = s 4^s Γ(1/2 + s) / (√π Γ(1 - s)).
inline RieszConstant riesz_constant(double s) {
    if (!(s > 0.0 && s < 1.0)) {
        throw DomainError("riesz_constant: s must lie in (0, 1)");
    }
    const double value = s * std::pow(4.0, s) * gamma_function(0.5 + s) /
                         (std::sqrt(std::numbers::pi) * gamma_function(1.0 - s));
    return {s, value};
}

/// Classify (s, β). The boundary 2s = 1 - β is detected by exact floating
/// comparison; callers who want the boundary must pass values for which
/// 2*s == 1 - beta holds in double arithmetic.
inline FracParams make_params(double s, double beta) {
    if (!(s > 0.0 && s < 1.0)) {
        throw DomainError("make_params: s must lie in (0, 1)");
    }
    if (!(beta > 0.0 && beta < 1.0)) {
        throw DomainError("make_params: beta must lie in (0, 1)");
    }
    const double two_s = 2.0 * s;
    const double gap = 1.0 - beta;
    if (two_s < gap) {
        return {s, beta, two_s / gap, Regime::RegimeI_strict};
    }
    if (two_s == gap) {
        return {s, beta, 1.0, Regime::RegimeI_boundary};
    }
    return {s, beta, two_s + beta, Regime::RegimeII};
}

}  // namespace fracreg
