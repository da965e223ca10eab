#pragma once

// Named catalog functions for the command line and the scenario runner.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "fracreg/catalog.hpp"
#include "fracreg/errors.hpp"
#include "fracreg/params.hpp"
#include "fracreg/piecewise.hpp"

namespace fracreg {

struct CatalogEntry {
    std::string id;
    std::string description;
};

inline const std::vector<CatalogEntry>& catalog_entries() {
    static const std::vector<CatalogEntry> entries{
        {"power-cutoff", "odd, x^r on [0,1], +-1 outside; r = 2s/(1-beta) unless --r is given"},
        {"abs-cutoff", "even, |x| on [-1,1], 1 outside"},
        {"signed-power-plus-linear", "odd, sign(x)|x|^(2s+beta) + x on [-1,1], +-2 outside (2s > 1-beta)"},
        {"periodic-profile", "8-periodic profile with power law x^r near 0 (2s < 1-beta)"},
        {"periodic-profile-ii", "8-periodic profile with sign(x)|x|^(2s+beta) + x near 0 (2s > 1-beta)"},
        {"cosine", "cos(2 pi x / P), period P (default 2 pi)"},
    };
    return entries;
}

/// Parameters a catalog function may need; unset values fall back to defaults.
struct CatalogRequest {
    std::string id;
    double s = 0.25;
    double beta = 0.4;
    std::optional<double> r;
    std::optional<double> delta;
    int blend_order = 2;
    double period = 2.0 * std::numbers::pi;
    std::optional<double> half_period;  ///< rescale a periodic profile to period 2L
};

/// Default cap half-width: 1/4, unless the cap slope 2 delta would exceed
/// u'(1-) = slope_bound, in which case slope_bound / 4.
inline double default_delta(double slope_bound) { return 0.5 < slope_bound ? 0.25 : slope_bound / 4.0; }

inline PiecewiseFunction make_catalog_function(const CatalogRequest& req) {
    if (req.id == "power-cutoff") {
        const double r = req.r ? *req.r : make_params(req.s, req.beta).r;
        return power_cutoff(r);
    }
    if (req.id == "abs-cutoff") return abs_cutoff();
    if (req.id == "signed-power-plus-linear") return signed_power_plus_linear(make_params(req.s, req.beta));
    if (req.id == "periodic-profile" || req.id == "periodic-profile-ii") {
        const FracParams p = make_params(req.s, req.beta);
        const bool second = req.id == "periodic-profile-ii";
        const double bound = second ? p.r + 1.0 : p.r;
        const double delta = req.delta ? *req.delta : default_delta(bound);
        PiecewiseFunction u = second ? periodic_profile_ii(p, delta, req.blend_order)
                                     : periodic_profile(p, delta, req.blend_order);
        if (req.half_period) u = rescale_periodic(u, *req.half_period, req.s).u;
        return u;
    }
    if (req.id == "cosine") return cosine_wave(req.period);
    throw PreconditionError("unknown function id '" + req.id + "'");
}

inline bool is_catalog_id(const std::string& id) {
    const auto& e = catalog_entries();
    return std::any_of(e.begin(), e.end(), [&](const CatalogEntry& c) { return c.id == id; });
}

}  // namespace fracreg
