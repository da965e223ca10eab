#pragma once

// Monotone inversion and property checks (a)-(f) of the periodic profile.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/tools/roots.hpp>

#include "fracreg/catalog.hpp"
#include "fracreg/errors.hpp"
#include "fracreg/piecewise.hpp"

namespace fracreg {

/// x in [a, b] with u(x) = t, for u strictly increasing on [a, b].
inline double invert_monotone(const PiecewiseFunction& u, double t, double a, double b) {
    if (!(b > a)) throw PreconditionError("invert_monotone: empty interval");
    const double ua = u(a);
    const double ub = u(b);
    if (!(ub > ua)) throw PreconditionError("invert_monotone: u is not increasing on the interval");
    if (!(t >= ua && t <= ub)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "invert_monotone: t = " << t << " outside [" << ua << ", " << ub << "]";
        throw RangeError(msg.str());
    }
    if (t == ua) return a;
    if (t == ub) return b;
    auto g = [&](double x) { return u(x) - t; };
    std::uintmax_t max_iter = 200;
    const auto [lo, hi] = boost::math::tools::toms748_solve(g, a, b, ua - t, ub - t,
                                                            boost::math::tools::eps_tolerance<double>(), max_iter);
    const double x = std::abs(g(lo)) <= std::abs(g(hi)) ? lo : hi;
    if (std::abs(g(x)) > 1e-13 * std::max(1.0, std::abs(t))) {
        std::ostringstream msg;
        msg << "invert_monotone: residual " << std::abs(g(x)) << " exceeds tolerance";
        throw PreconditionError(msg.str());
    }
    return x;
}

struct ProfileCheck {
    char tag;            ///< 'a' .. 'f'
    bool pass;
    double witness;      ///< point of largest violation (or of the extremum checked)
    double violation;    ///< size of the largest violation, 0 if none
    std::string detail;
};

struct ProfileValidationReport {
    std::vector<ProfileCheck> checks;
    double delta = 0.0;
    double cap_height = 0.0;

    bool all_passed() const {
        return std::all_of(checks.begin(), checks.end(), [](const ProfileCheck& c) { return c.pass; });
    }
    const ProfileCheck& check(char tag) const {
        for (const auto& c : checks) {
            if (c.tag == tag) return c;
        }
        throw PreconditionError("ProfileValidationReport: unknown tag");
    }
};

/// Check the six defining properties of an 8-periodic profile. The power law
/// on (-1, 1) is read from the first piece; delta from the start of the last.
inline ProfileValidationReport validate_profile(const PiecewiseFunction& u, int blend_order = 2) {
    if (!u.is_periodic() || *u.period() != 8.0) {
        throw PreconditionError("validate_profile: expected an 8-periodic function");
    }
    ProfileValidationReport rep;
    const auto& pieces = u.pieces();
    const auto* head = std::get_if<PowerTerm>(&pieces.front().kind);
    const double r = head ? head->exponent : 1.0;
    const double slope = head ? head->slope : 0.0;
    const double start_cap = pieces.back().lo;
    rep.delta = 2.0 - start_cap;
    rep.cap_height = u(2.0);
    const double dyadic = 1.0 / 1024.0;

    // (a) power law on (-1, 1)
    {
        ProfileCheck c{'a', true, 0.0, 0.0, "u(x) = sign(x)|x|^r + slope x on (-1, 1)"};
        if (!head) {
            c.pass = false;
            c.detail = "first piece is not a power law";
        }
        for (int i = -1023; i <= 1023 && head; ++i) {
            const double x = i * dyadic;
            const double want = std::copysign(std::pow(std::abs(x), r), x) + slope * x;
            const double err = std::abs(u(x) - want);
            if (err > c.violation) {
                c.violation = err;
                c.witness = x;
            }
        }
        if (c.violation > 4.0 * std::numeric_limits<double>::epsilon()) c.pass = false;
        rep.checks.push_back(c);
    }
    // (b) finite-order smoothness at the joins 1 and 2 - delta
    {
        ProfileCheck c{'b', true, 0.0, 0.0, "derivative jumps of order <= blend order vanish at the joins"};
        for (std::size_t i = 0; i + 1 < pieces.size(); ++i) {
            const double z = pieces[i].hi;
            for (int k = 0; k <= blend_order; ++k) {
                const double dl = piece_derivative(pieces[i].kind, z, k);
                const double dr = piece_derivative(pieces[i + 1].kind, z, k);
                const double jump = std::abs(dl - dr) / std::max(1.0, std::abs(dl));
                if (jump > c.violation) {
                    c.violation = jump;
                    c.witness = z;
                }
            }
        }
        if (c.violation > 1e-8) c.pass = false;
        rep.checks.push_back(c);
    }
    // (c) strictly increasing on (0, 2), grid step 1e-4
    {
        ProfileCheck c{'c', true, 0.0, 0.0, "u strictly increasing on (0, 2)"};
        double prev = u(0.0);
        for (int i = 1; i <= 20000; ++i) {
            const double x = i * 1e-4;
            const double cur = u(x);
            if (!(cur > prev)) {
                const double v = prev - cur;
                if (c.pass || v > c.violation) {
                    c.violation = v;
                    c.witness = x;
                }
                c.pass = false;
            }
            prev = cur;
        }
        rep.checks.push_back(c);
    }
    // (d) odd about 0, even about 2, and u(x + 4) = -u(x)
    {
        ProfileCheck c{'d', true, 0.0, 0.0, "u(-x) = -u(x), u(2 + h) = u(2 - h), u(x + 4) = -u(x)"};
        for (int i = -4096; i <= 4096; ++i) {
            const double x = i * dyadic;
            const double errs[3] = {std::abs(u(-x) + u(x)), std::abs(u(2.0 + x) - u(2.0 - x)),
                                    std::abs(u(x + 4.0) + u(x))};
            for (double e : errs) {
                if (e > c.violation) {
                    c.violation = e;
                    c.witness = x;
                }
            }
        }
        if (c.violation != 0.0) c.pass = false;
        rep.checks.push_back(c);
    }
    // (e) sup of u' on (1, 2) equals u'(1-)
    {
        const double d1 = piece_derivative(pieces.front().kind, 1.0, 1);
        ProfileCheck c{'e', true, 1.0, 0.0, "sup u' on (1, 2) <= u'(1-)"};
        double best = -kInf;
        for (int i = 1; i < 100000; ++i) {
            const double x = 1.0 + i * 1e-5;
            const double d = u.derivative(x, 1);
            if (d > best) {
                best = d;
                c.witness = x;
            }
        }
        c.violation = std::max(0.0, best - d1);
        if (best > d1 + 1e-10) c.pass = false;
        std::ostringstream msg;
        msg.precision(17);
        msg << "sup u' on (1, 2) = " << best << ", u'(1-) = " << d1;
        c.detail = msg.str();
        rep.checks.push_back(c);
    }
    // (f) exact quadratic cap on (2 - delta, 2 + delta)
    {
        ProfileCheck c{'f', true, 2.0, 0.0, "u(x) = -(x - 2)^2 + u(2) on (2 - delta, 2 + delta)"};
        const double u2 = u(2.0);
        for (int i = -1000; i <= 1000; ++i) {
            const double x = 2.0 + rep.delta * i / 1001.0;
            const double want = -(x - 2.0) * (x - 2.0) + u2;
            const double err = std::abs(u(x) - want);
            if (err > c.violation) {
                c.violation = err;
                c.witness = x;
            }
        }
        if (c.violation > 1e-12) c.pass = false;
        rep.checks.push_back(c);
    }
    return rep;
}

}  // namespace fracreg
