#include "supercurve/config.hpp"

#include <fstream>

namespace supercurve {

json to_json(const RunConfig& c) {
    json j;
    j["grid"] = {{"n_s", c.grid.n_s}, {"n_t", c.grid.n_t}, {"P_s", c.grid.P_s}, {"P_t", c.grid.P_t},
                 {"scheme", c.grid.scheme}};
    json t = {{"kind", c.target.kind}, {"dim", c.target.dim}, {"eps_j", c.target.eps_j}};
    if (c.target.lattice.size()) {
        std::vector<double> lat(c.target.lattice.data(), c.target.lattice.data() + c.target.lattice.size());
        t["lattice"] = lat;
    }
    j["target"] = t;
    j["lambda"] = {{"kind", c.lambda.kind}, {"value", c.lambda.value}, {"amplitude", c.lambda.amplitude},
                   {"freq_s", c.lambda.freq_s}, {"freq_t", c.lambda.freq_t}};
    j["seed"] = c.seed;
    j["tolerances"] = c.tolerances;
    j["out_dir"] = c.out_dir;
    return j;
}

RunConfig config_from_json(const json& j) {
    RunConfig c;
    if (j.contains("grid")) {
        const json& g = j["grid"];
        c.grid.n_s = g.value("n_s", c.grid.n_s);
        c.grid.n_t = g.value("n_t", c.grid.n_t);
        c.grid.P_s = g.value("P_s", c.grid.P_s);
        c.grid.P_t = g.value("P_t", c.grid.P_t);
        c.grid.scheme = g.value("scheme", c.grid.scheme);
        scheme_from_string(c.grid.scheme);  // validate
    }
    if (j.contains("target")) {
        const json& t = j["target"];
        c.target.kind = t.value("kind", c.target.kind);
        c.target.dim = t.value("dim", c.target.dim);
        c.target.eps_j = t.value("eps_j", c.target.eps_j);
        if (t.contains("lattice")) {
            std::vector<double> lat = t["lattice"].get<std::vector<double>>();
            c.target.lattice = Eigen::Map<Eigen::VectorXd>(lat.data(), long(lat.size()));
        }
    }
    if (j.contains("lambda")) {
        const json& l = j["lambda"];
        c.lambda.kind = l.value("kind", c.lambda.kind);
        c.lambda.value = l.value("value", c.lambda.value);
        c.lambda.amplitude = l.value("amplitude", c.lambda.amplitude);
        c.lambda.freq_s = l.value("freq_s", c.lambda.freq_s);
        c.lambda.freq_t = l.value("freq_t", c.lambda.freq_t);
    }
    c.seed = j.value("seed", c.seed);
    if (j.contains("tolerances")) c.tolerances = j["tolerances"].get<std::map<std::string, double>>();
    c.out_dir = j.value("out_dir", c.out_dir);

    if (c.grid.n_s <= 0 || c.grid.n_t <= 0 || c.grid.P_s <= 0 || c.grid.P_t <= 0)
        throw std::invalid_argument("config: grid fields must be positive");
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    json j;
    in >> j;
    return config_from_json(j);
}

void save_config(const RunConfig& c, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write config file: " + path);
    out << to_json(c).dump(2) << "\n";
}

}  // namespace supercurve
