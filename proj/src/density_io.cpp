#include "lcn/density_io.hpp"

#include <fstream>

#include "lcn/errors.hpp"

namespace lcn {

using nlohmann::json;

namespace {

double need(const json& params, const char* key) {
    if (!params.contains(key))
        throw UsageError(std::string("density spec missing parameter '") + key + "'");
    return params.at(key).get<double>();
}

double opt(const json& params, const char* key, double fallback) {
    return params.contains(key) ? params.at(key).get<double>() : fallback;
}

}  // namespace

LoadedDensity density_from_json(const json& spec) {
    if (spec.contains("pll")) {
        const json& p = spec.at("pll");
        PiecewiseLogLinearDensity d(p.at("knots").get<std::vector<double>>(),
                                    p.at("log_values").get<std::vector<double>>(),
                                    need(p, "left_slope"), need(p, "right_slope"));
        const double log_norm = d.log_norm_constant();
        const bool sym = p.value("symmetric", false);
        return {DensityHandle::pll(std::move(d), sym), log_norm};
    }
    if (!spec.contains("family"))
        throw UsageError("density spec needs either 'family' or 'pll'");
    const std::string fam = spec.at("family").get<std::string>();
    const json& p = spec.value("params", json::object());

    AnalyticDensity d{};
    if (fam == "gaussian") {
        d = AnalyticDensity::gaussian(need(p, "mu"), need(p, "sigma"));
    } else if (fam == "exponential") {
        d = AnalyticDensity::exponential(need(p, "rate"));
    } else if (fam == "laplace") {
        d = AnalyticDensity::laplace(need(p, "location"), need(p, "scale"));
    } else if (fam == "uniform") {
        d = AnalyticDensity::uniform(need(p, "a"), need(p, "b"));
    } else if (fam == "logistic") {
        d = AnalyticDensity::logistic(need(p, "location"), need(p, "scale"));
    } else if (fam == "gamma") {
        d = AnalyticDensity::gamma(need(p, "shape"), need(p, "rate"));
    } else {
        throw UsageError("unknown density family '" + fam + "'");
    }
    if (fam == "exponential" || fam == "gamma") {
        d.shift = opt(p, "shift", 0.0);
        const double o = opt(p, "orientation", 1.0);
        if (o != 1.0 && o != -1.0) throw UsageError("orientation must be 1 or -1");
        d.orientation = static_cast<int>(o);
    }
    return {DensityHandle::analytic(d), 0.0};
}

LoadedDensity load_density_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open density spec file: " + path);
    json spec;
    try {
        in >> spec;
    } catch (const json::exception& e) {
        throw UsageError("invalid JSON in " + path + ": " + e.what());
    }
    return density_from_json(spec);
}

json density_to_json(const DensityHandle& f) {
    json out;
    if (f.is_pll()) {
        const PiecewiseLogLinearDensity& d = f.pll();
        out["pll"] = {{"knots", d.knots()},
                      {"log_values", d.log_values()},
                      {"left_slope", d.left_slope()},
                      {"right_slope", d.right_slope()},
                      {"symmetric", f.symmetric()}};
        return out;
    }
    const AnalyticDensity& d = f.analytic();
    out["family"] = f.family_name();
    json p;
    switch (d.family) {
        case Family::gaussian: p = {{"mu", d.p1}, {"sigma", d.p2}}; break;
        case Family::exponential:
            p = {{"rate", d.p1}, {"shift", d.shift}, {"orientation", d.orientation}};
            break;
        case Family::laplace:
        case Family::logistic: p = {{"location", d.p1}, {"scale", d.p2}}; break;
        case Family::uniform: p = {{"a", d.p1}, {"b", d.p2}}; break;
        case Family::gamma:
            p = {{"shape", d.p1}, {"rate", d.p2}, {"shift", d.shift},
                 {"orientation", d.orientation}};
            break;
    }
    out["params"] = p;
    return out;
}

}  // namespace lcn
