#pragma once

// JSON form of PiecewiseFunction:
//   {"pieces": [{"kind", "params", "domain": [lo, hi]}], "symmetry", "mirror",
//    "period", "scale", "tail"}
// Infinite bounds are written as the strings "inf" / "-inf". Doubles are
// written in shortest round-trip form, so reading back is bit-exact.

#include <cmath>
#include <limits>
#include <string>

#include <json.hpp>

#include "fracreg/errors.hpp"
#include "fracreg/piecewise.hpp"

namespace fracreg {

namespace detail {

inline nlohmann::ordered_json bound_to_json(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

inline double bound_from_json(const nlohmann::ordered_json& j) {
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        throw PreconditionError("function JSON: bad bound '" + s + "'");
    }
    return j.get<double>();
}

inline nlohmann::ordered_json kind_params(const PieceKind& kind) {
    nlohmann::ordered_json p;
    if (const auto* k = std::get_if<PowerTerm>(&kind)) {
        p["coeff"] = k->coeff;
        p["exponent"] = k->exponent;
        p["slope"] = k->slope;
    } else if (const auto* k = std::get_if<LinearTerm>(&kind)) {
        p["a"] = k->a;
        p["b"] = k->b;
    } else if (const auto* k = std::get_if<QuadraticTerm>(&kind)) {
        p["center"] = k->center;
        p["coeff"] = k->coeff;
        p["offset"] = k->offset;
    } else if (const auto* k = std::get_if<PolynomialTerm>(&kind)) {
        p["origin"] = k->origin;
        p["coeffs"] = k->coeffs;
    } else if (const auto* k = std::get_if<ConstantTerm>(&kind)) {
        p["value"] = k->value;
    } else if (const auto* k = std::get_if<CosineTerm>(&kind)) {
        p["amplitude"] = k->amplitude;
        p["frequency"] = k->frequency;
        p["phase"] = k->phase;
    }
    return p;
}

inline PieceKind kind_from_json(const std::string& name, const nlohmann::ordered_json& p) {
    if (name == "power") return PowerTerm{p.at("coeff"), p.at("exponent"), p.at("slope")};
    if (name == "linear") return LinearTerm{p.at("a"), p.at("b")};
    if (name == "quadratic") return QuadraticTerm{p.at("center"), p.at("coeff"), p.at("offset")};
    if (name == "polynomial") return PolynomialTerm{p.at("origin"), p.at("coeffs").get<std::vector<double>>()};
    if (name == "constant") return ConstantTerm{p.at("value")};
    if (name == "cosine") return CosineTerm{p.at("amplitude"), p.at("frequency"), p.at("phase")};
    throw PreconditionError("function JSON: unknown piece kind '" + name + "'");
}

}  // namespace detail

inline nlohmann::ordered_json to_json(const PiecewiseFunction& u) {
    nlohmann::ordered_json j;
    j["pieces"] = nlohmann::ordered_json::array();
    for (const Piece& p : u.pieces()) {
        nlohmann::ordered_json e;
        e["kind"] = std::string(kind_name(p.kind));
        e["params"] = detail::kind_params(p.kind);
        e["domain"] = {detail::bound_to_json(p.lo), detail::bound_to_json(p.hi)};
        j["pieces"].push_back(e);
    }
    j["symmetry"] = std::string(to_string(u.symmetry()));
    j["mirror"] = u.mirror() ? nlohmann::ordered_json(*u.mirror()) : nlohmann::ordered_json(nullptr);
    j["period"] = u.base_period() ? nlohmann::ordered_json(*u.base_period()) : nlohmann::ordered_json(nullptr);
    j["scale"] = u.scale();
    if (const auto tail = u.constant_tail()) {
        j["tail"] = {{"kind", "constant"}, {"minus", tail->minus}, {"plus", tail->plus}};
    } else {
        j["tail"] = {{"kind", "periodic"}};
    }
    return j;
}

inline PiecewiseFunction function_from_json(const nlohmann::ordered_json& j) {
    std::vector<Piece> pieces;
    for (const auto& e : j.at("pieces")) {
        const auto& dom = e.at("domain");
        pieces.push_back(Piece{detail::kind_from_json(e.at("kind").get<std::string>(), e.at("params")),
                               detail::bound_from_json(dom.at(0)), detail::bound_from_json(dom.at(1))});
    }
    const std::string sym = j.at("symmetry").get<std::string>();
    Symmetry symmetry = Symmetry::None;
    if (sym == "odd") symmetry = Symmetry::OddAboutZero;
    else if (sym == "even") symmetry = Symmetry::EvenAboutZero;
    else if (sym != "none") throw PreconditionError("function JSON: unknown symmetry '" + sym + "'");
    std::optional<double> mirror;
    std::optional<double> period;
    if (j.contains("mirror") && !j["mirror"].is_null()) mirror = j["mirror"].get<double>();
    if (j.contains("period") && !j["period"].is_null()) period = j["period"].get<double>();
    const double scale = j.value("scale", 1.0);
    return PiecewiseFunction(std::move(pieces), symmetry, mirror, period, scale);
}

}  // namespace fracreg
