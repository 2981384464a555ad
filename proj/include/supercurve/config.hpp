#pragma once

#include <map>
#include <string>

#include <json.hpp>

#include "supercurve/target.hpp"
#include "supercurve/worldsheet.hpp"

namespace supercurve {

using nlohmann::json;

struct GridSpec {
    int n_s = 64, n_t = 64;
    double P_s = 1.0, P_t = 1.0;
    std::string scheme = "spectral";

    TorusGrid make() const { return TorusGrid(n_s, n_t, P_s, P_t, scheme_from_string(scheme)); }
};

struct LambdaSpec {
    std::string kind = "constant";  // constant | sinusoidal
    double value = 1.0;             // constant value / sinusoidal base
    double amplitude = 0.5;
    int freq_s = 1, freq_t = 0;

    ConformalFactor make(const TorusGrid& g) const {
        if (kind == "constant") return ConformalFactor::constant(g, value);
        if (kind == "sinusoidal") return ConformalFactor::sinusoidal(g, value, amplitude, freq_s, freq_t);
        throw std::invalid_argument("unknown lambda kind: " + kind);
    }
};

struct RunConfig {
    GridSpec grid;
    TargetSpec target;
    LambdaSpec lambda;
    std::uint64_t seed = 7;
    std::map<std::string, double> tolerances;  // per-check overrides
    std::string out_dir = "out";

    double tolerance(const std::string& check, double fallback) const {
        auto it = tolerances.find(check);
        return it == tolerances.end() ? fallback : it->second;
    }
};

json to_json(const RunConfig& c);
RunConfig config_from_json(const json& j);
RunConfig load_config(const std::string& path);
void save_config(const RunConfig& c, const std::string& path);

}  // namespace supercurve
