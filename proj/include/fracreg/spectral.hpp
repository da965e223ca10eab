#pragma once

// Fourier-multiplier evaluation of (-Δ)^s for periodic functions: mode k of
// period P is multiplied by |2πk/P|^{2s}.

#include <cmath>
#include <complex>
#include <cstddef>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>

#include <fftw3.h>

#include "fracreg/errors.hpp"
#include "fracreg/piecewise.hpp"
#include "fracreg/sampled.hpp"

namespace fracreg {

namespace detail {

// FFTW's planner is not thread-safe.
inline std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

struct FftwDeleter {
    void operator()(void* p) const { fftw_free(p); }
};

}  // namespace detail

/// (-Δ)^s u on the grid x_j = j P / n, j = 0..n-1. est_error bounds the
/// contribution of the top octave of retained modes, a proxy for the
/// truncation and aliasing error when coefficients decay algebraically.
inline SampledCurve frac_lap_spectral_periodic(const PiecewiseFunction& u, double s, std::size_t n_samples) {
    if (!u.is_periodic()) throw PreconditionError("frac_lap_spectral_periodic: function is not periodic");
    if (!(s > 0.0 && s < 1.0)) throw DomainError("frac_lap_spectral_periodic: s must lie in (0, 1)");
    if (n_samples < 16 || (n_samples & (n_samples - 1)) != 0) {
        throw PreconditionError("frac_lap_spectral_periodic: n_samples must be a power of two >= 16");
    }
    const std::size_t n = n_samples;
    const std::size_t modes = n / 2 + 1;
    const double P = *u.period();

    std::unique_ptr<double, detail::FftwDeleter> real(static_cast<double*>(fftw_malloc(sizeof(double) * n)));
    std::unique_ptr<fftw_complex, detail::FftwDeleter> spec(
        static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * modes)));
    fftw_plan forward;
    fftw_plan backward;
    {
        std::lock_guard lock(detail::fftw_planner_mutex());
        forward = fftw_plan_dft_r2c_1d(static_cast<int>(n), real.get(), spec.get(), FFTW_ESTIMATE);
        backward = fftw_plan_dft_c2r_1d(static_cast<int>(n), spec.get(), real.get(), FFTW_ESTIMATE);
    }

    SampledCurve out;
    out.x.resize(n);
    out.y.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        out.x[j] = P * static_cast<double>(j) / static_cast<double>(n);
        real.get()[j] = u(out.x[j]);
    }
    fftw_execute(forward);

    double tail = 0.0;
    const double w = 2.0 * std::numbers::pi / P;
    for (std::size_t k = 0; k < modes; ++k) {
        const double mult = (k == 0) ? 0.0 : std::pow(w * static_cast<double>(k), 2.0 * s);
        spec.get()[k][0] *= mult;
        spec.get()[k][1] *= mult;
        if (k > n / 4) tail += std::hypot(spec.get()[k][0], spec.get()[k][1]);
    }
    fftw_execute(backward);
    for (std::size_t j = 0; j < n; ++j) out.y[j] = real.get()[j] / static_cast<double>(n);
    {
        std::lock_guard lock(detail::fftw_planner_mutex());
        fftw_destroy_plan(forward);
        fftw_destroy_plan(backward);
    }
    out.est_error = 2.0 * tail / static_cast<double>(n);
    std::ostringstream tag;
    tag << "spectral(n=" << n << ", s=" << s << ")";
    out.provenance = tag.str();
    return out;
}

}  // namespace fracreg
