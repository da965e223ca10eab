#pragma once

// The nonlinearity f with (-Δ)^s u = f(u): sampled as f(u(x_j)) = (-Δ)^s u(x_j)
// on a uniform x-grid, interpolated by a monotone-preserving cubic, extended
// oddly through 0 and by constants beyond the sampled range.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

// Boost 1.74 pchip calls isnan unqualified; <math.h> declares it globally.
#include <math.h>

#include <boost/math/interpolators/pchip.hpp>

#include "fracreg/errors.hpp"
#include "fracreg/fraclap.hpp"
#include "fracreg/parallel.hpp"
#include "fracreg/params.hpp"
#include "fracreg/piecewise.hpp"
#include "fracreg/sampled.hpp"

namespace fracreg {

enum class Extension { RangeOnly, OddExtended };

inline std::string_view to_string(Extension e) {
    return e == Extension::OddExtended ? "odd-extended" : "range-only";
}

class ExtractedNonlinearity {
public:
    using Interpolant = boost::math::interpolators::pchip<std::vector<double>>;

    ExtractedNonlinearity() = default;
    ExtractedNonlinearity(std::vector<double> t, std::vector<double> f, std::vector<double> f_err, double t_max,
                          Extension ext)
        : grid_t_(std::move(t)), values_f_(std::move(f)), errors_(std::move(f_err)), t_max_(t_max), extension_(ext) {
        if (grid_t_.size() != values_f_.size() || grid_t_.size() != errors_.size()) {
            throw PreconditionError("ExtractedNonlinearity: grid and values differ in length");
        }
        if (grid_t_.size() < 4) throw PreconditionError("ExtractedNonlinearity: need at least 4 samples");
        for (std::size_t i = 1; i < grid_t_.size(); ++i) {
            if (!(grid_t_[i] > grid_t_[i - 1])) {
                throw PreconditionError("ExtractedNonlinearity: grid_t must be strictly increasing");
            }
        }
        interp_ = std::make_shared<const Interpolant>(std::vector<double>(grid_t_), std::vector<double>(values_f_));
    }

    const std::vector<double>& grid_t() const noexcept { return grid_t_; }
    const std::vector<double>& values_f() const noexcept { return values_f_; }
    /// Quadrature error estimate of each sample.
    const std::vector<double>& sample_errors() const noexcept { return errors_; }
    double t_max() const noexcept { return t_max_; }
    Extension extension() const noexcept { return extension_; }

    /// Monotone cubic interpolant; constant beyond the sampled range.
    double operator()(double t) const {
        if (t <= grid_t_.front()) return values_f_.front();
        if (t >= grid_t_.back()) return values_f_.back();
        return (*interp_)(t);
    }

    SampledCurve as_curve(std::string provenance = "extracted") const {
        return {grid_t_, values_f_, std::move(provenance), max_sample_error()};
    }

    double max_sample_error() const {
        return errors_.empty() ? 0.0 : *std::max_element(errors_.begin(), errors_.end());
    }

    /// Difference between this interpolant and the one built from every
    /// other node, at t. A practical estimate of the interpolation error.
    double interpolation_error_estimate(double t) const {
        std::vector<double> ht, hf;
        for (std::size_t i = 0; i < grid_t_.size(); i += 2) {
            ht.push_back(grid_t_[i]);
            hf.push_back(values_f_[i]);
        }
        if (ht.back() != grid_t_.back()) {
            ht.push_back(grid_t_.back());
            hf.push_back(values_f_.back());
        }
        if (ht.size() < 4) return std::abs((*this)(t));
        const Interpolant coarse(std::move(ht), std::move(hf));
        const double tc = std::clamp(t, grid_t_.front(), grid_t_.back());
        return std::abs((*this)(tc) - coarse(tc));
    }

private:
    std::vector<double> grid_t_;
    std::vector<double> values_f_;
    std::vector<double> errors_;
    double t_max_ = 0.0;
    Extension extension_ = Extension::RangeOnly;
    std::shared_ptr<const Interpolant> interp_;
};

/// Sample f(t) = ((-Δ)^s u)(u^{-1}(t)) at t_j = u(x_j), x_j = b j / n, j = 0..n.
inline ExtractedNonlinearity extract_f(const PiecewiseFunction& u, const FracParams& params, double b,
                                       std::size_t n_grid, const QuadratureConfig& cfg = {}, unsigned threads = 1) {
    if (!(b > 0.0)) throw DomainError("extract_f: monotone interval must be [0, b] with b > 0");
    if (n_grid < 3) throw PreconditionError("extract_f: need n_grid >= 3");
    std::vector<double> xs(n_grid + 1), ts(n_grid + 1), fs(n_grid + 1), es(n_grid + 1);
    for (std::size_t j = 0; j <= n_grid; ++j) {
        xs[j] = b * static_cast<double>(j) / static_cast<double>(n_grid);
        ts[j] = u(xs[j]);
        if (j > 0 && !(ts[j] > ts[j - 1])) {
            std::ostringstream msg;
            msg << "extract_f: u is not strictly increasing near x = " << xs[j];
            throw PreconditionError(msg.str());
        }
    }
    parallel_for(xs.size(), threads, [&](std::size_t j) {
        const EvalResult r = frac_lap_direct(u, xs[j], params.s, cfg);
        fs[j] = r.value;
        es[j] = r.est_error;
    });
    return ExtractedNonlinearity(std::move(ts), std::move(fs), std::move(es), u(b), Extension::RangeOnly);
}

/// f(-t) := -f(t). The sample at t = 0 must vanish to 1e-10; it is set to 0
/// so that the extension is odd node for node.
inline ExtractedNonlinearity odd_extend(const ExtractedNonlinearity& f) {
    if (f.extension() != Extension::RangeOnly) throw PreconditionError("odd_extend: already extended");
    const auto& t = f.grid_t();
    const auto& v = f.values_f();
    const auto& e = f.sample_errors();
    if (t.front() != 0.0) throw PreconditionError("odd_extend: grid must start at t = 0");
    if (std::abs(v.front()) > 1e-10) {
        std::ostringstream msg;
        msg << "odd_extend: f(0) = " << v.front() << " is not zero; u is not odd";
        throw ConsistencyError(msg.str());
    }
    const std::size_t n = t.size();
    std::vector<double> tt(2 * n - 1), vv(2 * n - 1), ee(2 * n - 1);
    for (std::size_t i = 1; i < n; ++i) {
        tt[n - 1 - i] = -t[i];
        vv[n - 1 - i] = -v[i];
        ee[n - 1 - i] = e[i];
        tt[n - 1 + i] = t[i];
        vv[n - 1 + i] = v[i];
        ee[n - 1 + i] = e[i];
    }
    tt[n - 1] = 0.0;
    vv[n - 1] = 0.0;
    ee[n - 1] = e[0] + std::abs(v[0]);
    return ExtractedNonlinearity(std::move(tt), std::move(vv), std::move(ee), f.t_max(), Extension::OddExtended);
}

struct ResidualReport {
    std::vector<double> grid_x;
    std::vector<double> lhs;          ///< (-Δ)^s u(x), direct
    std::vector<double> lhs_error;    ///< est_error of lhs
    std::vector<double> rhs;          ///< f(u(x)), interpolated
    std::vector<double> residuals;
    double sup_residual = 0.0;
    double max_abs_lhs = 0.0;
    Evaluator evaluator_used = Evaluator::Direct;
};

/// Compare (-Δ)^s u(x) against f(u(x)) on test points inside [region_lo, region_hi].
inline ResidualReport semilinear_residual(const PiecewiseFunction& u, const ExtractedNonlinearity& f, double s,
                                          std::span<const double> test_grid, double region_lo, double region_hi,
                                          const QuadratureConfig& cfg = {}, unsigned threads = 1) {
    for (double x : test_grid) {
        if (x < region_lo || x > region_hi) {
            std::ostringstream msg;
            msg << "semilinear_residual: x = " << x << " outside [" << region_lo << ", " << region_hi << "]";
            throw PreconditionError(msg.str());
        }
    }
    ResidualReport rep;
    const std::size_t n = test_grid.size();
    rep.grid_x.assign(test_grid.begin(), test_grid.end());
    rep.lhs.resize(n);
    rep.lhs_error.resize(n);
    rep.rhs.resize(n);
    rep.residuals.resize(n);
    parallel_for(n, threads, [&](std::size_t i) {
        const EvalResult r = frac_lap_direct(u, rep.grid_x[i], s, cfg);
        rep.lhs[i] = r.value;
        rep.lhs_error[i] = r.est_error;
        rep.rhs[i] = f(u(rep.grid_x[i]));
        rep.residuals[i] = std::abs(rep.lhs[i] - rep.rhs[i]);
    });
    for (std::size_t i = 0; i < n; ++i) {
        rep.sup_residual = std::max(rep.sup_residual, rep.residuals[i]);
        rep.max_abs_lhs = std::max(rep.max_abs_lhs, std::abs(rep.lhs[i]));
    }
    return rep;
}

/// Write (t, f) rows with 17 significant digits, LF line endings.
inline void write_csv(const ExtractedNonlinearity& f, std::ostream& os) {
    char line[96];
    os << "t,f\n";
    for (std::size_t i = 0; i < f.grid_t().size(); ++i) {
        std::snprintf(line, sizeof line, "%.17g,%.17g\n", f.grid_t()[i], f.values_f()[i]);
        os << line;
    }
}

/// Write text to path via a temporary file and rename, so readers never see
/// a partial file.
inline void write_file_atomically(const std::filesystem::path& path, const std::string& text) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        os << text;
        if (!os.flush()) throw std::runtime_error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace fracreg
