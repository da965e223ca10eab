#pragma once

// Exact piecewise functions on the real line with symmetry and periodicity
// metadata. Pieces are stored on a canonical domain only; values elsewhere
// are obtained by folding the argument (period, reflection about 0, mirror
// about x0) so that declared symmetries hold bit-for-bit.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fracreg/errors.hpp"
#include "fracreg/piece.hpp"

namespace fracreg {

enum class Symmetry { None, OddAboutZero, EvenAboutZero };

inline std::string_view to_string(Symmetry s) {
    switch (s) {
        case Symmetry::None: return "none";
        case Symmetry::OddAboutZero: return "odd";
        case Symmetry::EvenAboutZero: return "even";
    }
    return "none";
}

/// Limits of a bounded non-periodic function at -∞ and +∞.
struct ConstantTail {
    double minus;
    double plus;
};

/// How a point x was folded onto the canonical domain.
struct Chart {
    std::size_t piece = 0;
    double z = 0.0;       ///< canonical coordinate
    double sigma = 1.0;   ///< u(x) = sigma * piece(z)
    double dir = 1.0;     ///< dz/dx
    double shift = 0.0;   ///< period multiple removed (in scaled units)
    bool negated = false;
    bool mirrored = false;
};

class PiecewiseFunction {
public:
    PiecewiseFunction() = default;

    /// pieces: ordered, contiguous, covering the canonical domain:
    ///   periodic + symmetric + mirror m: [0, m] with period 4m
    ///   periodic + symmetric:            [0, P/2]
    ///   periodic:                        [-P/2, P/2]
    ///   symmetric, non-periodic:         [0, +∞)   (last piece constant)
    ///   non-periodic:                    (-∞, +∞)  (outer pieces constant)
    PiecewiseFunction(std::vector<Piece> pieces, Symmetry symmetry,
                      std::optional<double> mirror = std::nullopt,
                      std::optional<double> period = std::nullopt, double scale = 1.0)
        : pieces_(std::move(pieces)), symmetry_(symmetry), mirror_(mirror), period_(period), scale_(scale) {
        validate();
    }

    const std::vector<Piece>& pieces() const noexcept { return pieces_; }
    Symmetry symmetry() const noexcept { return symmetry_; }
    std::optional<double> mirror() const noexcept { return mirror_; }
    /// Period of the stored (unscaled) profile.
    std::optional<double> base_period() const noexcept { return period_; }
    /// x ↦ base(scale * x)
    double scale() const noexcept { return scale_; }
    bool is_periodic() const noexcept { return period_.has_value(); }

    /// Period in x units, accounting for the argument scale.
    std::optional<double> period() const noexcept {
        if (!period_) return std::nullopt;
        return *period_ / scale_;
    }

    std::optional<ConstantTail> constant_tail() const {
        if (period_) return std::nullopt;
        const double plus = piece_value(pieces_.back().kind, 0.0);
        double minus = 0.0;
        switch (symmetry_) {
            case Symmetry::OddAboutZero: minus = -plus; break;
            case Symmetry::EvenAboutZero: minus = plus; break;
            case Symmetry::None: minus = piece_value(pieces_.front().kind, 0.0); break;
        }
        return ConstantTail{minus, plus};
    }

    /// Return a copy evaluated at lambda * x.
    PiecewiseFunction rescaled(double lambda) const {
        if (!(lambda > 0.0)) throw DomainError("rescaled: lambda must be positive");
        PiecewiseFunction out = *this;
        out.scale_ = scale_ * lambda;
        return out;
    }

    Chart chart(double x) const {
        Chart c;
        double w = x * scale_;
        c.dir = scale_;
        if (period_) {
            const double k = std::nearbyint(w / *period_);
            c.shift = k * *period_;
            w -= c.shift;
        }
        if (symmetry_ != Symmetry::None && w < 0.0) {
            w = -w;
            c.negated = true;
            c.dir = -c.dir;
            if (symmetry_ == Symmetry::OddAboutZero) c.sigma = -1.0;
        }
        if (mirror_ && w > *mirror_) {
            w = 2.0 * *mirror_ - w;
            c.mirrored = true;
            c.dir = -c.dir;
        }
        c.z = w;
        c.piece = locate(w);
        return c;
    }

    /// Canonical coordinate of x under the folding recorded in a chart
    /// (same floating-point operations as chart()).
    double apply_chart(const Chart& c, double x) const {
        double w = x * scale_;
        if (period_) w -= c.shift;
        if (c.negated) w = -w;
        if (c.mirrored) w = 2.0 * *mirror_ - w;
        return w;
    }

    /// Chart for the open side of x: side = +1 for (x, x + probe), -1 for (x - probe, x).
    /// The piece is the one containing the probe midpoint; z is x's coordinate
    /// under that folding, so one-sided differences can use the piece formula.
    Chart side_chart(double x, int side, double probe) const {
        Chart c = chart(x + side * 0.5 * probe);
        c.z = apply_chart(c, x);
        return c;
    }

    double operator()(double x) const {
        const Chart c = chart(x);
        return c.sigma * piece_value(pieces_[c.piece].kind, c.z);
    }

    /// order-th derivative inside a piece (one-sided at breakpoints, taken
    /// from the piece that chart() selects).
    double derivative(double x, int order) const {
        const Chart c = chart(x);
        return c.sigma * std::pow(c.dir, order) * piece_derivative(pieces_[c.piece].kind, c.z, order);
    }

    /// Sorted breakpoints of the unfolded function inside [lo, hi], in x units.
    std::vector<double> breakpoints_in(double lo, double hi) const {
        std::vector<double> out;
        const std::vector<double> base = fundamental_breakpoints();
        if (!period_) {
            for (double b : base) {
                const double xb = b / scale_;
                if (xb >= lo && xb <= hi) out.push_back(xb);
            }
            return out;
        }
        const double P = *period_;
        const double wlo = lo * scale_;
        const double whi = hi * scale_;
        const long long kmin = static_cast<long long>(std::floor(wlo / P)) - 1;
        const long long kmax = static_cast<long long>(std::ceil(whi / P)) + 1;
        for (long long k = kmin; k <= kmax; ++k) {
            for (double b : base) {
                const double xb = (b + static_cast<double>(k) * P) / scale_;
                if (xb >= lo && xb <= hi) out.push_back(xb);
            }
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    /// Breakpoints in scaled coordinates: all finite kinks for non-periodic
    /// functions, one period [-P/2, P/2) for periodic ones.
    std::vector<double> fundamental_breakpoints() const {
        std::vector<double> canon;
        for (const Piece& p : pieces_) {
            if (std::isfinite(p.lo)) canon.push_back(p.lo);
        }
        if (std::isfinite(pieces_.back().hi)) canon.push_back(pieces_.back().hi);

        std::vector<double> out;
        for (double b : canon) {
            out.push_back(b);
            if (symmetry_ != Symmetry::None) out.push_back(-b);
            if (mirror_) {
                const double m = 2.0 * *mirror_ - b;
                out.push_back(m);
                out.push_back(-m);
            }
        }
        if (period_) {
            const double half = 0.5 * *period_;
            for (double& b : out) {
                if (b >= half) b -= *period_;
                if (b < -half) b += *period_;
            }
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    /// sup |u| bounded by sampling each piece densely plus endpoints.
    double sup_norm_estimate() const {
        double m = 0.0;
        for (const Piece& p : pieces_) {
            const double a = std::isfinite(p.lo) ? p.lo : (std::isfinite(p.hi) ? p.hi - 1.0 : 0.0);
            const double b = std::isfinite(p.hi) ? p.hi : a + 1.0;
            for (int i = 0; i <= 256; ++i) {
                const double z = a + (b - a) * i / 256.0;
                m = std::max(m, std::abs(piece_value(p.kind, z)));
            }
        }
        return m;
    }

    bool operator==(const PiecewiseFunction& other) const = default;

private:
    std::size_t locate(double w) const {
        // Pieces are contiguous; find the last piece with lo <= w.
        auto it = std::upper_bound(pieces_.begin(), pieces_.end(), w,
                                   [](double value, const Piece& p) { return value < p.lo; });
        if (it == pieces_.begin()) return 0;
        return static_cast<std::size_t>(std::distance(pieces_.begin(), it) - 1);
    }

    void validate() const {
        if (pieces_.empty()) throw PreconditionError("PiecewiseFunction: no pieces");
        if (!(scale_ > 0.0)) throw DomainError("PiecewiseFunction: scale must be positive");
        for (std::size_t i = 0; i < pieces_.size(); ++i) {
            const Piece& p = pieces_[i];
            if (!(p.hi > p.lo)) throw PreconditionError("PiecewiseFunction: empty piece domain");
            if (i + 1 < pieces_.size() && pieces_[i + 1].lo != p.hi) {
                throw PreconditionError("PiecewiseFunction: pieces must be contiguous");
            }
            if (const auto* poly = std::get_if<PolynomialTerm>(&p.kind); poly && poly->coeffs.empty()) {
                throw PreconditionError("PiecewiseFunction: polynomial without coefficients");
            }
        }
        const double lo = pieces_.front().lo;
        const double hi = pieces_.back().hi;
        if (mirror_ && (!period_ || symmetry_ == Symmetry::None)) {
            throw PreconditionError("PiecewiseFunction: mirror symmetry requires a symmetric periodic function");
        }
        if (period_) {
            if (!(*period_ > 0.0)) throw DomainError("PiecewiseFunction: period must be positive");
            const double P = *period_;
            double want_lo = -0.5 * P;
            double want_hi = 0.5 * P;
            if (symmetry_ != Symmetry::None) want_lo = 0.0;
            if (mirror_) {
                want_hi = *mirror_;
                if (4.0 * *mirror_ != P) {
                    throw PreconditionError("PiecewiseFunction: mirror point must be a quarter period");
                }
            }
            if (lo != want_lo || hi != want_hi) {
                throw PreconditionError("PiecewiseFunction: pieces do not cover the fundamental domain");
            }
            return;
        }
        const bool last_const = std::holds_alternative<ConstantTerm>(pieces_.back().kind) && std::isinf(hi);
        if (!last_const) {
            throw PreconditionError("PiecewiseFunction: non-periodic function needs a constant tail at +inf");
        }
        if (symmetry_ == Symmetry::None) {
            if (!(std::holds_alternative<ConstantTerm>(pieces_.front().kind) && std::isinf(lo))) {
                throw PreconditionError("PiecewiseFunction: non-periodic function needs a constant tail at -inf");
            }
        } else if (lo != 0.0) {
            throw PreconditionError("PiecewiseFunction: symmetric function must be stored on [0, inf)");
        }
    }

    std::vector<Piece> pieces_;
    Symmetry symmetry_ = Symmetry::None;
    std::optional<double> mirror_;
    std::optional<double> period_;
    double scale_ = 1.0;
};

/// Exact closed-form value of u at x.
inline double evaluate(const PiecewiseFunction& u, double x) { return u(x); }

}  // namespace fracreg
