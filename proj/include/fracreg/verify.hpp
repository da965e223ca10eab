#pragma once

// Verification scenarios: each runs a list of numerical checks and records
// measured value, tolerance and outcome. Acceptance criteria and the command
// line `verify` subcommand are both built from these check groups.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fracreg/catalog.hpp"
#include "fracreg/decomposition.hpp"
#include "fracreg/extract.hpp"
#include "fracreg/fraclap.hpp"
#include "fracreg/holder.hpp"
#include "fracreg/local_ode.hpp"
#include "fracreg/parallel.hpp"
#include "fracreg/params.hpp"
#include "fracreg/profile.hpp"
#include "fracreg/registry.hpp"
#include "fracreg/spectral.hpp"

namespace fracreg {

namespace anchors {
inline constexpr const char* kQIntegrals = "closed-form integrals for the cut-off absolute value";
inline constexpr const char* kEigenfunction = "Fourier multiplier |xi|^(2s) on cos";
inline constexpr const char* kDecomposition = "decomposition into c1 x^(r-2s) + c2 x^r + G - H";
inline constexpr const char* kDecompositionIdentity = "decomposition with the identity added (2s > 1 - beta)";
inline constexpr const char* kSemilinear = "semilinear identity (-Delta)^s u = f(u)";
inline constexpr const char* kOddExtension = "odd extension of f";
inline constexpr const char* kHolderF = "Holder regularity of f";
inline constexpr const char* kExponentU = "sharp Holder exponent of u at the origin";
inline constexpr const char* kExponentF = "Holder exponent of f at the origin";
inline constexpr const char* kLipschitzH = "Lipschitz continuity of t -> H(t^(1/r))";
inline constexpr const char* kPowerInequalities = "power inequalities for 0 < r < 1";
inline constexpr const char* kLocalExample = "local example u'' = f(u)";
inline constexpr const char* kInverseLipschitz = "Lipschitz inverse of u (2s > 1 - beta)";
inline constexpr const char* kSymmetryTransfer = "symmetry transfer to (-Delta)^s u";
inline constexpr const char* kHalfPeriod = "half-period antisymmetry u(x+4) = -u(x)";
inline constexpr const char* kScaling = "scaling identity for u(lambda x)";
inline constexpr const char* kProfile = "periodic profile properties (a)-(f)";
inline constexpr const char* kLipschitzTop = "Lipschitz continuity of f near u(2)";
inline constexpr const char* kSpectral = "spectral multiplier cross-check";
}  // namespace anchors

/// Every anchor a report may cite. Reports are checked against this list.
inline const std::vector<std::string>& anchor_manifest() {
    static const std::vector<std::string> m{
        anchors::kQIntegrals,        anchors::kEigenfunction,   anchors::kDecomposition,
        anchors::kDecompositionIdentity, anchors::kSemilinear,  anchors::kOddExtension,
        anchors::kHolderF,           anchors::kExponentU,       anchors::kExponentF,
        anchors::kLipschitzH,        anchors::kPowerInequalities, anchors::kLocalExample,
        anchors::kInverseLipschitz,  anchors::kSymmetryTransfer, anchors::kHalfPeriod,
        anchors::kScaling,           anchors::kProfile,         anchors::kLipschitzTop,
        anchors::kSpectral,
    };
    return m;
}

struct CheckEntry {
    std::string name;
    std::string anchor;
    double measured;
    double tolerance;
    bool upper;  ///< pass iff measured <= tolerance; otherwise measured >= tolerance
    bool pass;
    std::string detail;
};

class CheckList {
public:
    void add(std::string name, std::string anchor, double measured, double tolerance, bool upper = true,
             std::string detail = {}) {
        if (std::find(anchor_manifest().begin(), anchor_manifest().end(), anchor) == anchor_manifest().end()) {
            throw std::logic_error("check '" + name + "' cites an anchor missing from the manifest");
        }
        const bool pass = upper ? (measured <= tolerance) : (measured >= tolerance);
        entries_.push_back({std::move(name), std::move(anchor), measured, tolerance, upper, pass, std::move(detail)});
    }
    const std::vector<CheckEntry>& entries() const noexcept { return entries_; }
    bool all_pass() const {
        return std::all_of(entries_.begin(), entries_.end(), [](const CheckEntry& e) { return e.pass; });
    }

private:
    std::vector<CheckEntry> entries_;
};

struct VerificationReport {
    std::string scenario;
    std::uint64_t seed = 0;
    std::vector<CheckEntry> entries;
    double runtime_seconds = 0.0;

    bool overall_pass() const {
        return std::all_of(entries.begin(), entries.end(), [](const CheckEntry& e) { return e.pass; });
    }

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["schema"] = "1";
        j["scenario"] = scenario;
        j["seed"] = seed;
        j["overall_pass"] = overall_pass();
        j["entries"] = nlohmann::ordered_json::array();
        for (const auto& e : entries) {
            j["entries"].push_back({{"name", e.name},
                                    {"anchor", e.anchor},
                                    {"measured", e.measured},
                                    {"comparison", e.upper ? "<=" : ">="},
                                    {"tolerance", e.tolerance},
                                    {"pass", e.pass},
                                    {"detail", e.detail}});
        }
        j["runtime_seconds"] = runtime_seconds;
        return j;
    }
};

struct VerifyOptions {
    std::uint64_t seed = 7;
    QuadratureConfig cfg{};
    unsigned threads = 1;
};

namespace detail {

inline std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

inline std::vector<double> uniform_grid(double a, double b, std::size_t n) {
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    return g;
}

inline std::vector<EvalResult> direct_on_grid(const PiecewiseFunction& u, std::span<const double> xs, double s,
                                              const QuadratureConfig& cfg, unsigned threads) {
    std::vector<EvalResult> out(xs.size());
    parallel_for(xs.size(), threads, [&](std::size_t i) { out[i] = frac_lap_direct(u, xs[i], s, cfg); });
    return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Closed-form Q integrals of the cut-off absolute value.

/// The four defining integrals of closed_form_Q_integrals by adaptive quadrature.
inline QIntegrals quadrature_Q_integrals(double x, double s) {
    const PiecewiseFunction u = abs_cutoff();
    const detail::SecondDifference d(u, x, 4.0);
    const quad::Tolerance tol{1e-13, 1e-13, std::size_t{1} << 16};
    const double e = 1.0 + 2.0 * s;
    auto left = [&](double z) { return d.minus(z) * std::pow(z, -e); };   // y = -z
    auto right = [&](double y) { return d.plus(y) * std::pow(y, -e); };
    QIntegrals q{};
    q.q1 = quad::integrate_to_infinity(left, 1.0 + x, e, tol).value;
    q.q2 = x == 0.0 ? quad::integrate_left_singular(left, 0.0, 1.0, -2.0 * s, tol).value
                    : quad::integrate(left, x, 1.0 + x, tol).value;
    if (x == 0.0) {
        q.q3 = quad::integrate_left_singular(right, 0.0, 1.0, -2.0 * s, tol).value;
    } else {
        // Principal value: pair y with -y on (0, x), then the one-sided rest.
        auto paired = [&](double y) { return (d.plus(y) + d.minus(y)) * std::pow(y, -e); };
        q.q3 = quad::integrate_left_singular(paired, 0.0, x, 1.0 - 2.0 * s, tol).value;
        if (1.0 - x > x) q.q3 += quad::integrate(right, x, 1.0 - x, tol).value;
    }
    q.q4 = quad::integrate_to_infinity(right, 1.0 - x, e, tol).value;
    return q;
}

inline void check_q_integrals(CheckList& out, const VerifyOptions& opt) {
    for (double s : {0.1, 0.2, 0.35, 0.45}) {
        double worst = 0.0;
        double worst_direct = 0.0;
        for (double x : {0.0, 0.1, 0.25, 0.4, 0.5}) {
            const QIntegrals c = closed_form_Q_integrals(x, s);
            const QIntegrals q = quadrature_Q_integrals(x, s);
            worst = std::max({worst, std::abs(c.q1 - q.q1), std::abs(c.q2 - q.q2), std::abs(c.q3 - q.q3),
                              std::abs(c.q4 - q.q4)});
            const double direct = frac_lap_direct(abs_cutoff(), x, s, opt.cfg).value;
            worst_direct = std::max(worst_direct, std::abs(direct - abs_cutoff_laplacian(x, s).value));
        }
        out.add("Q1..Q4 quadrature vs closed form, s=" + detail::fmt(s), anchors::kQIntegrals, worst, 1e-9);
        out.add("direct (-Delta)^s |x| vs -c_s (Q1+Q2+Q3+Q4), s=" + detail::fmt(s), anchors::kQIntegrals,
                worst_direct, 1e-9);
    }
}

// ---------------------------------------------------------------------------
// cos is an eigenfunction with eigenvalue 1.

inline void check_eigenfunction(CheckList& out, const VerifyOptions& opt) {
    const double P = 2.0 * std::numbers::pi;
    const PiecewiseFunction u = cosine_wave(P);
    std::vector<double> xs(20);
    for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = -std::numbers::pi + P * static_cast<double>(i) / 20.0;
    for (double s : {0.25, 0.5, 0.75}) {
        const auto d = detail::direct_on_grid(u, xs, s, opt.cfg, opt.threads);
        double sup_d = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) sup_d = std::max(sup_d, std::abs(d[i].value - std::cos(xs[i])));
        out.add("direct (-Delta)^s cos - cos, s=" + detail::fmt(s), anchors::kEigenfunction, sup_d, 1e-6);
        const SampledCurve c = frac_lap_spectral_periodic(u, s, 64);
        double sup_s = 0.0;
        for (std::size_t i = 0; i < c.size(); ++i) sup_s = std::max(sup_s, std::abs(c.y[i] - std::cos(c.x[i])));
        out.add("spectral (-Delta)^s cos - cos, s=" + detail::fmt(s), anchors::kEigenfunction, sup_s, 1e-10);
    }
}

// ---------------------------------------------------------------------------
// Decomposition vs direct quadrature.

inline void check_decomposition(CheckList& out, const VerifyOptions& opt) {
    struct Case {
        FracParams p;
        PiecewiseFunction u;
        const char* anchor;
    };
    const FracParams p1 = make_params(0.25, 0.4);
    const FracParams p2 = make_params(0.4, 0.5);
    const Case cases[] = {{p1, power_cutoff(p1.r), anchors::kDecomposition},
                          {p2, signed_power_plus_linear(p2), anchors::kDecompositionIdentity}};
    for (const Case& c : cases) {
        const double r = decomposition_exponent(c.u);
        const DecompositionConstants k = decomposition_constants(r, c.p.s, opt.cfg);
        std::vector<double> xs(50);
        for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = static_cast<double>(i + 1) / 100.0;
        std::vector<double> rel(xs.size());
        parallel_for(xs.size(), opt.threads, [&](std::size_t i) {
            const double dir = frac_lap_direct(c.u, xs[i], c.p.s, opt.cfg).value;
            const double dec = decomposition_eval(c.u, xs[i], c.p, k, opt.cfg).value;
            rel[i] = std::abs(dec - dir) / std::abs(dir);
        });
        out.add("decomposition vs direct, relative, (s,beta)=(" + detail::fmt(c.p.s) + "," + detail::fmt(c.p.beta) +
                    "), 50 points in (0,1/2]",
                c.anchor, *std::max_element(rel.begin(), rel.end()), 1e-6);
    }
}

// ---------------------------------------------------------------------------
// Constructions (u, f) with (-Δ)^s u = f(u).

enum class ConstructionKind { Regime1, Boundary, Regime2, Regime1Periodic, Regime2Periodic };

struct Construction {
    ConstructionKind kind;
    std::string name;
    FracParams params;
    PiecewiseFunction u;
    double b;             ///< u increasing on [0, b]; f sampled on [0, u(b)]
    double region;        ///< identity claimed on [-region, region]
    bool odd;
    bool periodic;
    std::size_t n_extract;
    double tolerance;     ///< residual tolerance relative to 1 + max|(-Δ)^s u|
};

inline Construction make_construction(ConstructionKind kind) {
    switch (kind) {
        case ConstructionKind::Regime1: {
            const FracParams p = make_params(0.25, 0.4);
            return {kind, "regime I power cut-off", p, power_cutoff(p.r), 0.5, 0.5, true, false, 500, 1e-6};
        }
        case ConstructionKind::Boundary: {
            const FracParams p = make_params(0.3, 0.4);
            return {kind, "boundary 2s = 1-beta, cut-off |x|", p, abs_cutoff(), 0.5, 0.5, false, false, 500, 1e-6};
        }
        case ConstructionKind::Regime2: {
            const FracParams p = make_params(0.4, 0.5);
            return {kind, "regime II power plus identity", p, signed_power_plus_linear(p), 0.5, 0.5, true, false,
                    500, 1e-6};
        }
        case ConstructionKind::Regime1Periodic: {
            const FracParams p = make_params(0.25, 0.4);
            return {kind, "regime I periodic profile", p, periodic_profile(p, default_delta(p.r)), 2.0, 4.0, true,
                    true, 200, 1e-4};
        }
        case ConstructionKind::Regime2Periodic: {
            const FracParams p = make_params(0.4, 0.5);
            return {kind, "regime II periodic profile", p, periodic_profile_ii(p, default_delta(p.r + 1.0)), 2.0,
                    4.0, true, true, 200, 1e-4};
        }
    }
    throw PreconditionError("make_construction: unknown kind");
}

/// f at any t in [0, u(b)]: (-Δ)^s u at the preimage of t.
inline double nonlinearity_exact(const Construction& c, double t, const QuadratureConfig& cfg) {
    const double x = invert_monotone(c.u, t, 0.0, c.b);
    return frac_lap_direct(c.u, x, c.params.s, cfg).value;
}

inline void check_semilinear(CheckList& out, const Construction& c, const VerifyOptions& opt) {
    const double s = c.params.s;
    const double beta = c.params.beta;
    const ExtractedNonlinearity f = extract_f(c.u, c.params, c.b, c.n_extract, opt.cfg, opt.threads);
    const std::string tag = " [" + c.name + "]";

    ExtractedNonlinearity F = f;
    if (c.odd) {
        out.add("f(0) = (-Delta)^s u(0)" + tag, anchors::kOddExtension, std::abs(f.values_f().front()), 1e-10);
        F = odd_extend(f);
    }

    // Test grids coincide with extraction nodes or their reflections.
    std::vector<double> grid(101);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double k = static_cast<double>(i) - 50.0;
        grid[i] = c.periodic ? k * 8.0 / 100.0 : k / 100.0;
    }
    const ResidualReport rep = semilinear_residual(c.u, F, s, grid, -c.region, c.region, opt.cfg, opt.threads);
    out.add("sup |(-Delta)^s u - f(u)| / (1 + max|(-Delta)^s u|) on 101 points" + tag, anchors::kSemilinear,
            rep.sup_residual / (1.0 + rep.max_abs_lhs), c.tolerance);

    // Symmetry of the left side, within twice the error estimates.
    {
        const double sign = c.odd ? 1.0 : -1.0;
        double worst = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const std::size_t j = grid.size() - 1 - i;
            const double gap = std::abs(rep.lhs[i] + sign * rep.lhs[j]);
            worst = std::max(worst, gap / (2.0 * (rep.lhs_error[i] + rep.lhs_error[j]) + 1e-300));
        }
        out.add(std::string(c.odd ? "odd" : "even") + " transfer on the residual grid, gap / (2 est_error)" + tag,
                anchors::kSymmetryTransfer, worst, 1.0);
    }
    if (c.periodic) {
        // Even about 2: rows x and 4 - x.
        double worst = 0.0;
        for (std::size_t i = 50; i <= 100; ++i) {
            const std::size_t j = 150 - i;
            const double gap = std::abs(rep.lhs[i] - rep.lhs[j]);
            worst = std::max(worst, gap / (2.0 * (rep.lhs_error[i] + rep.lhs_error[j]) + 1e-300));
        }
        out.add("(-Delta)^s u(x) = (-Delta)^s u(4-x), gap / (2 est_error)" + tag, anchors::kSymmetryTransfer, worst,
                1.0);

        // f is Lipschitz near t = u(2): the adjacent-difference maximum on the
        // top 10% of the range is stable when every other node is dropped.
        SampledCurve top, half;
        const auto& t = f.grid_t();
        const auto& v = f.values_f();
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (t[i] < 0.9 * f.t_max()) continue;
            top.x.push_back(t[i]);
            top.y.push_back(v[i]);
            if ((t.size() - 1 - i) % 2 == 0) {
                half.x.push_back(t[i]);
                half.y.push_back(v[i]);
            }
        }
        const double q_full = lipschitz_quotient_max(top);
        const double q_half = lipschitz_quotient_max(half);
        out.add("Lipschitz quotient of f on the top 10% of its range, full/half-grid ratio" + tag,
                anchors::kLipschitzTop, q_full / q_half, 1.1, true, "full " + detail::fmt(q_full) + ", half " +
                detail::fmt(q_half));
    }

    if (c.odd) {
        const double sn_range = holder_seminorm(f.as_curve(), beta);
        const double sn_odd = holder_seminorm(F.as_curve(), beta);
        out.add("C^beta seminorm of odd extension / seminorm on the range" + tag, anchors::kOddExtension,
                sn_odd / sn_range, 2.0);
    }

    if (c.kind == ConstructionKind::Regime1 || c.kind == ConstructionKind::Regime2) {
        const double r = decomposition_exponent(c.u);
        const DecompositionConstants k = decomposition_constants(r, s, opt.cfg);
        std::vector<std::size_t> idx;
        for (std::size_t j = 5; j <= c.n_extract; j += 5) idx.push_back(j);
        std::vector<double> diff(idx.size());
        parallel_for(idx.size(), opt.threads, [&](std::size_t m) {
            const double x = c.b * static_cast<double>(idx[m]) / static_cast<double>(c.n_extract);
            diff[m] = std::abs(decomposition_eval(c.u, x, c.params, k, opt.cfg).value - f.values_f()[idx[m]]);
        });
        out.add("extracted f vs f* = c1 t^beta' + c2 t + c_s G - c_s H at 100 nodes" + tag,
                c.kind == ConstructionKind::Regime1 ? anchors::kDecomposition : anchors::kDecompositionIdentity,
                *std::max_element(diff.begin(), diff.end()), 1e-6);
    }
    if (c.kind == ConstructionKind::Boundary) {
        double worst = 0.0;
        for (std::size_t j = 0; j <= c.n_extract; ++j) {
            const double x = c.b * static_cast<double>(j) / static_cast<double>(c.n_extract);
            worst = std::max(worst, std::abs(abs_cutoff_laplacian(x, s).value - f.values_f()[j]));
        }
        out.add("extracted f vs c_s x^(1-2s)/(s(1-2s)) + smooth part, closed form" + tag, anchors::kQIntegrals, worst,
                1e-9);
    }

    if (!c.periodic) {
        // Seminorm at beta is finite and stable under grid doubling.
        const ExtractedNonlinearity f2 = extract_f(c.u, c.params, c.b, 2 * c.n_extract, opt.cfg, opt.threads);
        const double sn1 = holder_seminorm(f.as_curve(), beta);
        const double sn2 = holder_seminorm(f2.as_curve(), beta);
        out.add("C^beta seminorm of f, relative drift under grid doubling" + tag, anchors::kHolderF,
                std::abs(sn2 - sn1) / sn1, 0.05, true, "n: " + detail::fmt(sn1) + ", 2n: " + detail::fmt(sn2));
    }

    if (c.kind == ConstructionKind::Regime1) {
        // Round trip on points between the extraction nodes.
        std::vector<double> mid;
        for (std::size_t m = 0; m < 50; ++m) mid.push_back(c.b * (10.0 * m + 5.0) / 1000.0);
        const ResidualReport rm = semilinear_residual(c.u, F, s, mid, -c.region, c.region, opt.cfg, opt.threads);
        double worst = 0.0;
        for (std::size_t m = 0; m < mid.size(); ++m) {
            const double bound = F.interpolation_error_estimate(c.u(mid[m])) +
                                 2.0 * (rm.lhs_error[m] + F.max_sample_error());
            worst = std::max(worst, rm.residuals[m] / bound);
        }
        out.add("residual between extraction nodes / (interpolation estimate + 2 est_error)" + tag,
                anchors::kSemilinear, worst, 1.0);
    }
}

inline void check_exponents(CheckList& out, const Construction& c, const VerifyOptions& opt) {
    const std::string tag = " [" + c.name + "]";
    const bool second = c.kind == ConstructionKind::Regime2;
    double expected_u = c.params.r;
    if (c.kind == ConstructionKind::Boundary) expected_u = 1.0;
    const auto eu = local_exponent([&](double x) { return c.u(x); }, 0.0, 1e-6, 1e-1, second ? 1 : 0);
    out.add("|local exponent of u at 0 - " + detail::fmt(expected_u) + "|" + tag, anchors::kExponentU,
            eu ? std::abs(eu->exponent - expected_u) : INFINITY, 0.02, true,
            eu ? "exponent " + detail::fmt(eu->exponent) + ", fit residual " + detail::fmt(eu->fit_residual)
               : "smoother than window");

    const double h_max = 1e-5;
    const auto ef =
        local_exponent([&](double t) { return nonlinearity_exact(c, t, opt.cfg); }, 0.0, std::ldexp(h_max, -13), h_max);
    out.add("|local exponent of f at 0 - beta|" + tag, anchors::kExponentF,
            ef ? std::abs(ef->exponent - c.params.beta) : INFINITY, 0.03, true,
            ef ? "exponent " + detail::fmt(ef->exponent) + ", fit residual " + detail::fmt(ef->fit_residual)
               : "smoother than window");
}

// ---------------------------------------------------------------------------
// Lipschitz continuity of t -> H(t^{1/r}).

inline void check_lipschitz_H(CheckList& out, const VerifyOptions& opt) {
    const FracParams p = make_params(0.25, 0.4);
    const double r = p.r;
    const double top = std::pow(2.0, -r);
    const std::size_t fine = 4096;
    std::vector<double> t(fine + 1);
    for (std::size_t j = 0; j <= fine; ++j) t[j] = top * static_cast<double>(j) / static_cast<double>(fine);

    auto study = [&](const PiecewiseFunction& u, const QuadratureConfig& cfg, const std::string& label) {
        SampledCurve c12{t, std::vector<double>(t.size()), "H(t^(1/r))"};
        parallel_for(t.size(), opt.threads, [&](std::size_t j) {
            c12.y[j] = H_eval(u, std::pow(t[j], 1.0 / r), p.s, cfg).value;
        });
        SampledCurve c10;
        for (std::size_t j = 0; j <= fine; j += 4) {
            c10.x.push_back(c12.x[j]);
            c10.y.push_back(c12.y[j]);
        }
        const double q10 = lipschitz_quotient_max(c10);
        const double q12 = lipschitz_quotient_max(c12);
        out.add("Lipschitz quotient drift 2^10 -> 2^12 points, " + label, anchors::kLipschitzH,
                std::abs(q12 - q10) / q10, 0.05, true, "q10 " + detail::fmt(q10) + ", q12 " + detail::fmt(q12));
    };
    study(power_cutoff(r), opt.cfg, "power cut-off");
    QuadratureConfig periodic_cfg = opt.cfg;
    periodic_cfg.period_terms = std::min(periodic_cfg.period_terms, 64);
    study(periodic_profile(p, default_delta(r)), periodic_cfg, "periodic profile");

    SampledCurve s12{t, std::vector<double>(t.size()), "sqrt"};
    for (std::size_t j = 0; j <= fine; ++j) s12.y[j] = std::sqrt(t[j]);
    SampledCurve s10;
    for (std::size_t j = 0; j <= fine; j += 4) {
        s10.x.push_back(t[j]);
        s10.y.push_back(s12.y[j]);
    }
    out.add("negative control sqrt(t): quotient growth 2^10 -> 2^12 points", anchors::kLipschitzH,
            lipschitz_quotient_max(s12) / lipschitz_quotient_max(s10), 2.0, false);
}

// ---------------------------------------------------------------------------
// Randomized inequality suites.

inline void check_power_inequalities(CheckList& out, const VerifyOptions& opt) {
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (double r : {0.3, 5.0 / 6.0, 0.95}) {
        const double top = std::pow(2.0, -r);
        std::size_t bad_i = 0, bad_ii = 0;
        double worst_i = 0.0, worst_ii = 0.0;
        for (int n = 0; n < 10000; ++n) {
            double x = top * unit(rng);
            double z = top * unit(rng);
            if (x > z) std::swap(x, z);
            const double zr = std::pow(z, 1.0 / r);
            const double xr = std::pow(x, 1.0 / r);
            // y >= z^{1/r} (i) and y > z^{1/r} (ii), log-uniform offsets in [1e-8, 10]
            const double w = std::exp(std::log(1e-8) + unit(rng) * (std::log(10.0) - std::log(1e-8)));
            const double yi = (n % 50 == 0) ? zr : zr + w;
            const double yii = zr + w;
            const double lhs_i = std::pow(zr + yi, r) - std::pow(xr + yi, r);
            const double rhs_i = std::pow(2.0, r) * (z - x);
            const double slack_i = 1e-14 * std::pow(zr + yi, r);
            if (lhs_i > rhs_i + slack_i) ++bad_i;
            if (rhs_i > 0.0) worst_i = std::max(worst_i, lhs_i / rhs_i);
            const double lhs_ii = std::pow(yii - xr, r) - std::pow(yii - zr, r);
            const double rhs_ii = std::pow(2.0, r - 1.0) * std::pow(yii - zr, r - 1.0) * (z - x);
            const double slack_ii = 1e-14 * std::pow(yii - xr, r);
            if (lhs_ii > rhs_ii + slack_ii) ++bad_ii;
            if (rhs_ii > 0.0) worst_ii = std::max(worst_ii, lhs_ii / rhs_ii);
        }
        out.add("(z^(1/r)+y)^r - (x^(1/r)+y)^r <= 2^r (z-x): violations in 1e4, r=" + detail::fmt(r),
                anchors::kPowerInequalities, static_cast<double>(bad_i), 0.0, true,
                "max lhs/rhs " + detail::fmt(worst_i));
        out.add("(y-x^(1/r))^r - (y-z^(1/r))^r <= 2^(r-1)(y-z^(1/r))^(r-1)(z-x): violations in 1e4, r=" +
                    detail::fmt(r),
                anchors::kPowerInequalities, static_cast<double>(bad_ii), 0.0, true,
                "max lhs/rhs " + detail::fmt(worst_ii));
    }
}

inline void check_local_example(CheckList& out, const VerifyOptions& opt) {
    std::mt19937_64 rng(opt.seed + 1);
    std::uniform_real_distribution<double> unit(0.0, 3.0);
    for (double beta : {0.25, 0.5, 0.75}) {
        const LocalOdeExample ex(beta);
        double worst = 0.0;
        for (int n = 0; n < 100000; ++n) {
            const double x = unit(rng);
            const double y = unit(rng);
            if (x == y) continue;
            worst = std::max(worst, ex.holder_quotient(x, y));
        }
        out.add("max |f(p)-f(q)|/|p-q|^beta / ((2+beta)(1+beta)), 1e5 pairs, beta=" + detail::fmt(beta),
                anchors::kLocalExample, worst / ex.constant(), 1.0 + 1e-12);
        out.add("sup |u'' - f(u)| on [-1, 3], beta=" + detail::fmt(beta), anchors::kLocalExample, ex.check(-1.0, 3.0, 401),
                1e-12 * ex.constant() * std::pow(3.0, beta));
    }
}

inline void check_inverse_lipschitz(CheckList& out, const VerifyOptions& opt) {
    const FracParams p = make_params(0.4, 0.5);
    const PiecewiseFunction u = signed_power_plus_linear(p);
    const PieceKind& head = u.pieces().front().kind;
    std::mt19937_64 rng(opt.seed + 2);
    std::uniform_real_distribution<double> unit(0.0, 0.5);
    double worst = 0.0;
    for (int n = 0; n < 10000; ++n) {
        double x = unit(rng);
        double y = unit(rng);
        if (x == y) continue;
        if (x > y) std::swap(x, y);
        const double h = y - x;
        worst = std::max(worst, h / piece_forward_difference(head, x, h));
    }
    out.add("max |u^-1(p) - u^-1(q)| / |p - q| over 1e4 pairs in [0, u(1/2)]", anchors::kInverseLipschitz, worst, 1.0);

    std::uniform_real_distribution<double> range(0.0, u(0.5));
    double worst_inv = 0.0;
    for (int n = 0; n < 10000; ++n) {
        double a = range(rng);
        double b = range(rng);
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        worst_inv = std::max(worst_inv, (invert_monotone(u, b, 0.0, 0.5) - invert_monotone(u, a, 0.0, 0.5)) / (b - a));
    }
    out.add("same quotient through numerical inversion of random p < q", anchors::kInverseLipschitz, worst_inv,
            1.0 + 1e-9);
}

// ---------------------------------------------------------------------------
// Symmetry and scaling.

inline void check_symmetry_scaling(CheckList& out, const VerifyOptions& opt) {
    std::vector<double> xs(20);
    for (std::size_t k = 0; k < xs.size(); ++k) xs[k] = 0.025 * static_cast<double>(k + 1);
    std::vector<double> neg(xs.size());
    std::transform(xs.begin(), xs.end(), neg.begin(), [](double x) { return -x; });

    const FracParams p1 = make_params(0.25, 0.4);
    const FracParams p2 = make_params(0.4, 0.5);
    const FracParams pb = make_params(0.3, 0.4);
    const PiecewiseFunction profile = periodic_profile(p1, default_delta(p1.r));
    struct Case {
        std::string label;
        PiecewiseFunction u;
        double s;
        double sign;  ///< +1 odd, -1 even
    };
    const Case cases[] = {{"power cut-off", power_cutoff(p1.r), p1.s, 1.0},
                          {"power plus identity", signed_power_plus_linear(p2), p2.s, 1.0},
                          {"periodic profile", profile, p1.s, 1.0},
                          {"cut-off |x|", abs_cutoff(), pb.s, -1.0}};
    for (const Case& c : cases) {
        const auto a = detail::direct_on_grid(c.u, xs, c.s, opt.cfg, opt.threads);
        const auto b = detail::direct_on_grid(c.u, neg, c.s, opt.cfg, opt.threads);
        double worst = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            worst = std::max(worst, std::abs(a[i].value + c.sign * b[i].value) /
                                        (2.0 * (a[i].est_error + b[i].est_error) + 1e-300));
        }
        out.add(std::string(c.sign > 0 ? "odd" : "even") + " transfer, gap / (2 est_error), 20 points, " + c.label,
                anchors::kSymmetryTransfer, worst, 1.0);
    }

    // Dyadic points keep x + 4 exact.
    std::vector<double> dy(20), dy4(20);
    for (std::size_t k = 0; k < dy.size(); ++k) {
        dy[k] = -3.5 + 0.375 * static_cast<double>(k);
        dy4[k] = dy[k] + 4.0;
    }
    double exact_gap = 0.0;
    for (std::size_t k = 0; k < dy.size(); ++k) exact_gap = std::max(exact_gap, std::abs(profile(dy4[k]) + profile(dy[k])));
    out.add("max |u(x+4) + u(x)|, 20 points", anchors::kHalfPeriod, exact_gap, 0.0);
    {
        const auto a = detail::direct_on_grid(profile, dy, p1.s, opt.cfg, opt.threads);
        const auto b = detail::direct_on_grid(profile, dy4, p1.s, opt.cfg, opt.threads);
        double worst = 0.0;
        for (std::size_t i = 0; i < dy.size(); ++i) {
            worst = std::max(worst, std::abs(a[i].value + b[i].value) / (2.0 * (a[i].est_error + b[i].est_error)));
        }
        out.add("(-Delta)^s u(x+4) + (-Delta)^s u(x), gap / (2 est_error), 20 points", anchors::kHalfPeriod, worst,
                1.0);
    }

    std::vector<double> sx(20);
    for (std::size_t k = 0; k < sx.size(); ++k) sx[k] = 0.1 + 0.15 * static_cast<double>(k);
    for (double lambda : {0.5, 2.0}) {
        const RescaledProfile rp = rescale_periodic(profile, 4.0 / lambda, p1.s);
        std::vector<double> lx(sx.size());
        std::transform(sx.begin(), sx.end(), lx.begin(), [&](double x) { return lambda * x; });
        const auto a = detail::direct_on_grid(rp.u, sx, p1.s, opt.cfg, opt.threads);
        const auto b = detail::direct_on_grid(profile, lx, p1.s, opt.cfg, opt.threads);
        double worst = 0.0;
        for (std::size_t i = 0; i < sx.size(); ++i) {
            const double want = rp.laplacian_factor * b[i].value;
            worst = std::max(worst, std::abs(a[i].value - want) / std::abs(want));
        }
        out.add("(-Delta)^s[u(lambda .)](x) vs lambda^(2s) (-Delta)^s u(lambda x), relative, lambda=" +
                    detail::fmt(lambda),
                anchors::kScaling, worst, 1e-8);
    }
}

// ---------------------------------------------------------------------------
// Profile validation with negative controls.

inline void check_profile(CheckList& out, const VerifyOptions&) {
    const FracParams p = make_params(0.25, 0.4);
    const PiecewiseFunction u = periodic_profile(p, 0.25, 2);
    const ProfileValidationReport rep = validate_profile(u);
    for (const ProfileCheck& c : rep.checks) {
        out.add(std::string("property (") + c.tag + "): " + c.detail, anchors::kProfile, c.pass ? 1.0 : 0.0, 1.0,
                false, "max violation " + detail::fmt(c.violation) + " at x = " + detail::fmt(c.witness));
    }

    // Cap replaced by a cubic: (f) must fail.
    std::vector<Piece> pieces = u.pieces();
    const double u2 = u(2.0);
    pieces.back().kind = PolynomialTerm{2.0, {u2, 0.0, -1.0, 0.5}};
    const PiecewiseFunction no_cap(pieces, u.symmetry(), u.mirror(), u.base_period());
    const ProfileCheck f_check = validate_profile(no_cap).check('f');
    out.add("negative control: cubic cap fails (f) with a witness", anchors::kProfile,
            (!f_check.pass && f_check.violation > 0.0) ? 1.0 : 0.0, 1.0, false,
            "violation " + detail::fmt(f_check.violation) + " at x = " + detail::fmt(f_check.witness));

    // Cap height above the admissible interval: bridge slope exceeds r, (e) must fail.
    const ProfileShape shape{p.r, 0.0, 0.25, 2};
    const double too_high = 1.0 + p.r * 0.75 + 0.0625 + 0.2;
    const ProfileCheck e_check = validate_profile(build_periodic_profile(shape, too_high)).check('e');
    out.add("negative control: steep bridge fails (e) with a witness", anchors::kProfile,
            (!e_check.pass && e_check.violation > 0.0) ? 1.0 : 0.0, 1.0, false,
            e_check.detail + " at x = " + detail::fmt(e_check.witness));
}

inline void check_spectral_profile(CheckList& out, const VerifyOptions& opt) {
    const FracParams p = make_params(0.25, 0.4);
    const PiecewiseFunction u = periodic_profile(p, default_delta(p.r));
    const std::size_t n = std::size_t{1} << 16;
    const SampledCurve c = frac_lap_spectral_periodic(u, p.s, n);
    std::vector<std::size_t> idx;
    for (std::size_t j = 0; j < n; j += 64) {
        if (c.x[j] >= 0.05 && c.x[j] <= 0.45) idx.push_back(j);
    }
    std::vector<double> gap(idx.size());
    parallel_for(idx.size(), opt.threads, [&](std::size_t m) {
        gap[m] = std::abs(frac_lap_direct(u, c.x[idx[m]], p.s, opt.cfg).value - c.y[idx[m]]);
    });
    out.add("spectral (n=2^16) vs direct on [0.05, 0.45], periodic profile", anchors::kSpectral,
            *std::max_element(gap.begin(), gap.end()), 1e-8);
}

// ---------------------------------------------------------------------------
// Scenarios.

struct ScenarioInfo {
    std::string name;
    std::string description;
    std::vector<std::string> anchors;
};

inline const std::vector<ScenarioInfo>& scenario_catalog() {
    using namespace anchors;
    static const std::vector<ScenarioInfo> list{
        {"regime1-nonperiodic", "power cut-off with r = 2s/(1-beta): extraction, identity, exponents",
         {kOddExtension, kSemilinear, kSymmetryTransfer, kHolderF, kDecomposition, kExponentU, kExponentF}},
        {"regime1-boundary", "cut-off |x| with 2s = 1-beta: extraction, identity, exponents",
         {kSemilinear, kSymmetryTransfer, kHolderF, kQIntegrals, kExponentU, kExponentF}},
        {"regime1-periodic", "8-periodic profile: properties, identity on [-4,4], spectral cross-check",
         {kProfile, kOddExtension, kSemilinear, kSymmetryTransfer, kLipschitzTop, kSpectral}},
        {"regime2-nonperiodic", "sign(x)|x|^(2s+beta) + x: extraction, identity, exponents, inverse",
         {kOddExtension, kSemilinear, kSymmetryTransfer, kHolderF, kDecompositionIdentity, kExponentU, kExponentF,
          kInverseLipschitz}},
        {"regime2-periodic", "8-periodic profile with identity: identity on [-4,4]",
         {kOddExtension, kSemilinear, kSymmetryTransfer, kLipschitzTop}},
        {"appendix-local", "local example u'' = f(u) with explicit f", {kLocalExample}},
        {"cross-validate", "direct vs spectral vs decomposition",
         {kEigenfunction, kDecomposition, kDecompositionIdentity, kSpectral}},
        {"lemma22", "randomized power inequalities", {kPowerInequalities}},
        {"lemma25", "closed-form Q integrals of the cut-off |x|", {kQIntegrals}},
        {"lipschitz-H", "Lipschitz continuity of t -> H(t^(1/r))", {kLipschitzH}},
        {"scaling", "symmetry transfer, half-period antisymmetry, lambda scaling",
         {kSymmetryTransfer, kHalfPeriod, kScaling}},
    };
    return list;
}

inline bool is_scenario(const std::string& name) {
    const auto& l = scenario_catalog();
    return std::any_of(l.begin(), l.end(), [&](const ScenarioInfo& s) { return s.name == name; });
}

inline void run_construction(CheckList& out, ConstructionKind kind, const VerifyOptions& opt, bool exponents) {
    const Construction c = make_construction(kind);
    check_semilinear(out, c, opt);
    if (exponents) check_exponents(out, c, opt);
}

inline VerificationReport run_scenario(const std::string& name, const VerifyOptions& opt = {}) {
    if (!is_scenario(name)) throw PreconditionError("unknown scenario '" + name + "'");
    const auto start = std::chrono::steady_clock::now();
    CheckList out;
    if (name == "regime1-nonperiodic") {
        run_construction(out, ConstructionKind::Regime1, opt, true);
    } else if (name == "regime1-boundary") {
        run_construction(out, ConstructionKind::Boundary, opt, true);
    } else if (name == "regime1-periodic") {
        check_profile(out, opt);
        run_construction(out, ConstructionKind::Regime1Periodic, opt, false);
        check_spectral_profile(out, opt);
    } else if (name == "regime2-nonperiodic") {
        run_construction(out, ConstructionKind::Regime2, opt, true);
        check_inverse_lipschitz(out, opt);
    } else if (name == "regime2-periodic") {
        run_construction(out, ConstructionKind::Regime2Periodic, opt, false);
    } else if (name == "appendix-local") {
        check_local_example(out, opt);
    } else if (name == "cross-validate") {
        check_eigenfunction(out, opt);
        check_decomposition(out, opt);
        check_spectral_profile(out, opt);
    } else if (name == "lemma22") {
        check_power_inequalities(out, opt);
    } else if (name == "lemma25") {
        check_q_integrals(out, opt);
    } else if (name == "lipschitz-H") {
        check_lipschitz_H(out, opt);
    } else if (name == "scaling") {
        check_symmetry_scaling(out, opt);
    }
    VerificationReport rep;
    rep.scenario = name;
    rep.seed = opt.seed;
    rep.entries = out.entries();
    rep.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

}  // namespace fracreg
