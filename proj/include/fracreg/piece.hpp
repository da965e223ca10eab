#pragma once

// Closed-form pieces of a piecewise function. Every piece knows how to
// evaluate itself, its derivatives, and cancellation-free forward and
// symmetric second differences; the singular-integral evaluators depend on
// the latter near the origin of the kernel.

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <string_view>
#include <variant>
#include <vector>

namespace fracreg {

/// coeff * |z|^exponent + slope * z. Used on z >= 0.
struct PowerTerm {
    double coeff = 1.0;
    double exponent = 1.0;
    double slope = 0.0;
    bool operator==(const PowerTerm&) const = default;
};

/// a * z + b
struct LinearTerm {
    double a = 0.0;
    double b = 0.0;
    bool operator==(const LinearTerm&) const = default;
};

/// coeff * (z - center)^2 + offset
struct QuadraticTerm {
    double center = 0.0;
    double coeff = 0.0;
    double offset = 0.0;
    bool operator==(const QuadraticTerm&) const = default;
};

/// sum_k coeffs[k] * (z - origin)^k
struct PolynomialTerm {
    double origin = 0.0;
    std::vector<double> coeffs;
    bool operator==(const PolynomialTerm&) const = default;
};

struct ConstantTerm {
    double value = 0.0;
    bool operator==(const ConstantTerm&) const = default;
};

/// amplitude * cos(frequency * z + phase)
struct CosineTerm {
    double amplitude = 1.0;
    double frequency = 1.0;
    double phase = 0.0;
    bool operator==(const CosineTerm&) const = default;
};

using PieceKind =
    std::variant<PowerTerm, LinearTerm, QuadraticTerm, PolynomialTerm, ConstantTerm, CosineTerm>;

/// A closed-form expression valid on [lo, hi). Bounds may be infinite.
struct Piece {
    PieceKind kind;
    double lo = 0.0;
    double hi = 0.0;
    bool operator==(const Piece&) const = default;
};

inline std::string_view kind_name(const PieceKind& kind) {
    struct Visitor {
        std::string_view operator()(const PowerTerm&) const { return "power"; }
        std::string_view operator()(const LinearTerm&) const { return "linear"; }
        std::string_view operator()(const QuadraticTerm&) const { return "quadratic"; }
        std::string_view operator()(const PolynomialTerm&) const { return "polynomial"; }
        std::string_view operator()(const ConstantTerm&) const { return "constant"; }
        std::string_view operator()(const CosineTerm&) const { return "cosine"; }
    };
    return std::visit(Visitor{}, kind);
}

namespace detail {

// Taylor coefficients b_j of p about z: p(z + h) = sum_j b_j h^j.
inline std::vector<double> taylor_at(const PolynomialTerm& p, double z) {
    std::vector<double> b = p.coeffs;
    const double w = z - p.origin;
    const std::size_t n = b.size();
    // Repeated synthetic division (Horner shift).
    for (std::size_t j = 0; j + 1 < n; ++j) {
        for (std::size_t k = n - 1; k > j; --k) {
            b[k - 1] += w * b[k];
        }
    }
    return b;
}

inline double falling_factorial(double e, int k) {
    double out = 1.0;
    for (int i = 0; i < k; ++i) {
        out *= (e - i);
    }
    return out;
}

// (1 + t)^e + (1 - t)^e - 2 for 0 <= t < 1 without cancellation.
inline double even_binomial_excess(double e, double t) {
    if (t > 0.5) {
        return std::expm1(e * std::log1p(t)) + std::expm1(e * std::log1p(-t));
    }
    const double t2 = t * t;
    double coeff = 1.0;  // C(e, 2k)
    double power = 1.0;  // t^(2k)
    double sum = 0.0;
    for (int k = 1; k < 200; ++k) {
        coeff *= (e - 2.0 * k + 2.0) * (e - 2.0 * k + 1.0) / ((2.0 * k - 1.0) * (2.0 * k));
        power *= t2;
        const double term = coeff * power;
        sum += term;
        if (std::abs(term) <= 1e-18 * std::abs(sum) || term == 0.0) {
            break;
        }
    }
    return 2.0 * sum;
}

}  // namespace detail

/// Value of a piece at z.
inline double piece_value(const PieceKind& kind, double z) {
    struct Visitor {
        double z;
        double operator()(const PowerTerm& p) const {
            return p.coeff * std::pow(std::abs(z), p.exponent) + p.slope * z;
        }
        double operator()(const LinearTerm& p) const { return p.a * z + p.b; }
        double operator()(const QuadraticTerm& p) const {
            const double d = z - p.center;
            return p.coeff * d * d + p.offset;
        }
        double operator()(const PolynomialTerm& p) const {
            const double w = z - p.origin;
            double acc = 0.0;
            for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) {
                acc = acc * w + *it;
            }
            return acc;
        }
        double operator()(const ConstantTerm& p) const { return p.value; }
        double operator()(const CosineTerm& p) const {
            return p.amplitude * std::cos(p.frequency * z + p.phase);
        }
    };
    return std::visit(Visitor{z}, kind);
}

/// order-th derivative at z (order >= 0). Power terms are differentiated for z > 0.
inline double piece_derivative(const PieceKind& kind, double z, int order) {
    if (order == 0) {
        return piece_value(kind, z);
    }
    struct Visitor {
        double z;
        int order;
        double operator()(const PowerTerm& p) const {
            double out = p.coeff * detail::falling_factorial(p.exponent, order) *
                         std::pow(std::abs(z), p.exponent - order);
            if (order == 1) out += p.slope;
            return out;
        }
        double operator()(const LinearTerm& p) const { return order == 1 ? p.a : 0.0; }
        double operator()(const QuadraticTerm& p) const {
            if (order == 1) return 2.0 * p.coeff * (z - p.center);
            if (order == 2) return 2.0 * p.coeff;
            return 0.0;
        }
        double operator()(const PolynomialTerm& p) const {
            const auto b = detail::taylor_at(p, z);
            if (static_cast<std::size_t>(order) >= b.size()) return 0.0;
            double fact = 1.0;
            for (int i = 2; i <= order; ++i) fact *= i;
            return b[static_cast<std::size_t>(order)] * fact;
        }
        double operator()(const ConstantTerm&) const { return 0.0; }
        double operator()(const CosineTerm& p) const {
            const double w = std::pow(p.frequency, order);
            return p.amplitude * w *
                   std::cos(p.frequency * z + p.phase + order * std::numbers::pi / 2.0);
        }
    };
    return std::visit(Visitor{z, order}, kind);
}

/// p(z + h) - p(z), computed without subtracting nearly equal values.
inline double piece_forward_difference(const PieceKind& kind, double z, double h) {
    struct Visitor {
        double z;
        double h;
        double operator()(const PowerTerm& p) const {
            double out = p.slope * h;
            const double az = std::abs(z);
            if (z > 0.0 && z + h >= 0.0) {
                out += p.coeff * std::pow(az, p.exponent) * std::expm1(p.exponent * std::log1p(h / z));
            } else {
                out += p.coeff * (std::pow(std::abs(z + h), p.exponent) - std::pow(az, p.exponent));
            }
            return out;
        }
        double operator()(const LinearTerm& p) const { return p.a * h; }
        double operator()(const QuadraticTerm& p) const {
            return p.coeff * h * (2.0 * (z - p.center) + h);
        }
        double operator()(const PolynomialTerm& p) const {
            const auto b = detail::taylor_at(p, z);
            double acc = 0.0;
            for (std::size_t j = b.size(); j-- > 1;) {
                acc = (acc + b[j]) * h;
            }
            return acc;
        }
        double operator()(const ConstantTerm&) const { return 0.0; }
        double operator()(const CosineTerm& p) const {
            const double half = 0.5 * p.frequency * h;
            return -2.0 * p.amplitude * std::sin(p.frequency * z + p.phase + half) * std::sin(half);
        }
    };
    return std::visit(Visitor{z, h}, kind);
}

/// p(z + h) + p(z - h) - 2 p(z) for h >= 0, without cancellation. Requires the
/// whole segment [z - h, z + h] to lie inside the piece.
inline double piece_second_difference(const PieceKind& kind, double z, double h) {
    struct Visitor {
        double z;
        double h;
        double operator()(const PowerTerm& p) const {
            if (z > 0.0 && h < z) {
                return p.coeff * std::pow(z, p.exponent) * detail::even_binomial_excess(p.exponent, h / z);
            }
            const double az = std::abs(z);
            return p.coeff * (std::pow(std::abs(z + h), p.exponent) + std::pow(std::abs(z - h), p.exponent) -
                              2.0 * std::pow(az, p.exponent));
        }
        double operator()(const LinearTerm&) const { return 0.0; }
        double operator()(const QuadraticTerm& p) const { return 2.0 * p.coeff * h * h; }
        double operator()(const PolynomialTerm& p) const {
            const auto b = detail::taylor_at(p, z);
            const double h2 = h * h;
            double acc = 0.0;
            // Only even orders survive: 2 * sum_{j even >= 2} b_j h^j.
            std::size_t top = b.size() - 1;
            if (top % 2 == 1) --top;
            for (std::size_t j = top; j >= 2; j -= 2) {
                acc = (acc + b[j]) * h2;
                if (j == 2) break;
            }
            return 2.0 * acc;
        }
        double operator()(const ConstantTerm&) const { return 0.0; }
        double operator()(const CosineTerm& p) const {
            const double sh = std::sin(0.5 * p.frequency * h);
            return -4.0 * p.amplitude * std::cos(p.frequency * z + p.phase) * sh * sh;
        }
    };
    return std::visit(Visitor{z, h}, kind);
}

}  // namespace fracreg
