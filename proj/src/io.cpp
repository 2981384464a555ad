#include "supercurve/io.hpp"

#include <filesystem>
#include <fstream>

namespace supercurve {

namespace fs = std::filesystem;

void write_real_component(const std::string& path, const RealField& f) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write field file: " + path);
    // row-major, s outermost
    for (int i = 0; i < f.rows(); ++i)
        for (int j = 0; j < f.cols(); ++j) {
            double v = f(i, j);
            out.write(reinterpret_cast<const char*>(&v), sizeof(double));
        }
}

RealField read_real_component(const std::string& path, int n_s, int n_t) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open field file: " + path);
    RealField f(n_s, n_t);
    for (int i = 0; i < n_s; ++i)
        for (int j = 0; j < n_t; ++j) {
            double v;
            if (!in.read(reinterpret_cast<char*>(&v), sizeof(double)))
                throw std::runtime_error("field file truncated: " + path);
            f(i, j) = v;
        }
    return f;
}

void write_vec_field(const std::string& dir, const std::string& name, const TorusGrid& g, const VecField& v,
                     bool complex_field) {
    fs::create_directories(dir);
    const int comps = complex_field ? 2 * v.dim() : v.dim();
    for (int k = 0; k < v.dim(); ++k) {
        if (complex_field) {
            write_real_component(dir + "/" + name + "_" + std::to_string(2 * k) + ".f64", v.c[k].real());
            write_real_component(dir + "/" + name + "_" + std::to_string(2 * k + 1) + ".f64", v.c[k].imag());
        } else {
            write_real_component(dir + "/" + name + "_" + std::to_string(k) + ".f64", v.c[k].real());
        }
    }
    json side = {{"n_s", g.n_s()}, {"n_t", g.n_t()}, {"P_s", g.P_s()}, {"P_t", g.P_t()},
                 {"components", comps},  {"layout", "s-major"}};
    std::ofstream out(dir + "/" + name + ".json");
    out << side.dump(2) << "\n";
}

VecField read_vec_field(const std::string& dir, const std::string& name, const TorusGrid& g, bool complex_field) {
    std::ifstream side_in(dir + "/" + name + ".json");
    if (!side_in) throw std::runtime_error("missing field sidecar: " + dir + "/" + name + ".json");
    json side;
    side_in >> side;
    if (side["n_s"] != g.n_s() || side["n_t"] != g.n_t())
        throw std::runtime_error("field grid mismatch in " + name);
    int comps = side["components"];
    int dim = complex_field ? comps / 2 : comps;
    VecField v(dim, g);
    for (int k = 0; k < dim; ++k) {
        if (complex_field) {
            RealField re = read_real_component(dir + "/" + name + "_" + std::to_string(2 * k) + ".f64", g.n_s(), g.n_t());
            RealField im =
                read_real_component(dir + "/" + name + "_" + std::to_string(2 * k + 1) + ".f64", g.n_s(), g.n_t());
            v.c[k] = re.cast<Complex>() + Complex(0, 1) * im.cast<Complex>();
        } else {
            v.c[k] = read_real_component(dir + "/" + name + "_" + std::to_string(k) + ".f64", g.n_s(), g.n_t())
                         .cast<Complex>();
        }
    }
    return v;
}

void write_superfield(const std::string& dir, const RunConfig& cfg, const TorusGrid& g, const SuperField& sf) {
    fs::create_directories(dir);
    write_vec_field(dir, "phi", g, sf.phi.periodic, false);
    write_vec_field(dir, "psi1", g, sf.psi1_theta, true);
    write_vec_field(dir, "psi2", g, sf.psi2_theta, true);
    write_vec_field(dir, "xi", g, sf.xi, true);
    json manifest;
    manifest["phi"] = "phi";
    manifest["psi1"] = "psi1";
    manifest["psi2"] = "psi2";
    manifest["xi"] = "xi";
    std::vector<double> ss(sf.phi.slope_s.data(), sf.phi.slope_s.data() + sf.phi.dim());
    std::vector<double> st(sf.phi.slope_t.data(), sf.phi.slope_t.data() + sf.phi.dim());
    manifest["slope_s"] = ss;
    manifest["slope_t"] = st;
    manifest["config"] = to_json(cfg);
    std::ofstream out(dir + "/superfield.json");
    out << manifest.dump(2) << "\n";
}

SuperField read_superfield(const std::string& dir, RunConfig& cfg_out, std::unique_ptr<TargetChart>& chart_out,
                           std::unique_ptr<TorusGrid>& grid_out) {
    std::ifstream in(dir + "/superfield.json");
    if (!in) throw std::runtime_error("missing superfield manifest: " + dir + "/superfield.json");
    json manifest;
    in >> manifest;
    cfg_out = config_from_json(manifest.at("config"));
    grid_out = std::make_unique<TorusGrid>(cfg_out.grid.make());
    chart_out = make_target(cfg_out.target);

    SuperField sf;
    sf.phi.periodic = read_vec_field(dir, manifest.at("phi"), *grid_out, false);
    sf.psi1_theta = read_vec_field(dir, manifest.at("psi1"), *grid_out, true);
    sf.psi2_theta = read_vec_field(dir, manifest.at("psi2"), *grid_out, true);
    sf.xi = read_vec_field(dir, manifest.at("xi"), *grid_out, true);
    std::vector<double> ss = manifest.at("slope_s").get<std::vector<double>>();
    std::vector<double> st = manifest.at("slope_t").get<std::vector<double>>();
    sf.phi.slope_s = Eigen::Map<Eigen::VectorXd>(ss.data(), long(ss.size()));
    sf.phi.slope_t = Eigen::Map<Eigen::VectorXd>(st.data(), long(st.size()));
    return sf;
}

json grassmann_to_json(const GrassmannElement& e) {
    json monos = json::array();
    for (unsigned m = 0; m < unsigned(e.n_coeffs()); ++m) {
        Complex c = e.coeff(m);
        if (c == Complex(0, 0)) continue;
        std::vector<int> gens;
        for (int b = 0; b < e.n_gens(); ++b)
            if ((m >> b) & 1u) gens.push_back(b);
        monos.push_back({{"gens", gens}, {"re", c.real()}, {"im", c.imag()}});
    }
    return json{{"monomials", monos}};
}

GrassmannElement grassmann_from_json(const json& j, int n_gens) {
    GrassmannElement e(n_gens);
    for (const auto& m : j.at("monomials")) {
        unsigned mask = 0;
        for (int b : m.at("gens").get<std::vector<int>>()) mask |= 1u << b;
        e.coeff(mask) = Complex(m.at("re").get<double>(), m.at("im").get<double>());
    }
    return e;
}

}  // namespace supercurve
