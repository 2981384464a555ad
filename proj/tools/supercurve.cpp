#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "supercurve/checks.hpp"
#include "supercurve/io.hpp"

namespace fs = std::filesystem;
using namespace supercurve;

namespace {

RunConfig load_or_default(const std::string& path) {
    if (path.empty()) return RunConfig{};
    return load_config(path);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

int cmd_verify(const std::string& config_path, const std::string& checks_arg, long long seed_override) {
    RunConfig cfg = load_or_default(config_path);
    if (seed_override >= 0) cfg.seed = std::uint64_t(seed_override);
    std::vector<std::string> names = checks_arg.empty() ? std::vector<std::string>{} : split_list(checks_arg);

    SuiteReport suite = run_suite(cfg, names);
    json out = suite.to_json();
    std::cout << out.dump(2) << std::endl;
    if (!cfg.out_dir.empty()) {
        fs::create_directories(cfg.out_dir);
        std::ofstream f(cfg.out_dir + "/report.json");
        f << out.dump(2) << "\n";
    }
    return suite.pass() ? 0 : 1;
}

int cmd_construct(const std::string& config_path, const std::string& out_dir) {
    RunConfig cfg = load_or_default(config_path);
    if (cfg.target.kind != "flat_torus") {
        std::cerr << "construct: unsupported configuration: target must be flat_torus (got " << cfg.target.kind
                  << ")\n";
        return 2;
    }
    TorusGrid g = cfg.grid.make();
    FlatTorusTarget flat(cfg.target.dim, cfg.target.lattice);
    ConformalFactor lam = cfg.lambda.make(g);

    std::vector<std::pair<int, int>> winding(cfg.target.dim / 2, {0, 0});
    winding[0] = {1, 0};
    if (cfg.target.dim >= 4) winding[1] = {0, 1};
    ConstructedExample ex = construct_supercurve(g, flat, winding, {Complex(1.0, 0.0)}, {Complex(0.5, -0.25)},
                                                 std::vector<Complex>(cfg.target.dim, Complex(0.3, 0.2)));

    MapGeometry geo(g, flat, ex.sf.phi, JetLevel::Curvature);
    SupercurveResiduals sr = supercurve_residuals(geo, ex.sf);
    ElResiduals el = el_residuals(geo, ex.sf, lam);

    write_superfield(out_dir, cfg, g, ex.sf);

    double tol = cfg.tolerance("construction", 1e-10);
    json rep;
    rep["residuals"] = {{"nijenhuis", sr.nijenhuis}, {"dbar", sr.dbar},     {"d_xi", sr.d_xi},
                        {"d_psi1", sr.d_psi1},       {"d_psi2", sr.d_psi2}};
    rep["el_residuals"] = {{"tau", el.tau}, {"psi1", el.psi1}, {"psi2", el.psi2}, {"xi", el.xi}};
    rep["tolerance"] = tol;
    rep["degenerate"] = ex.degenerate;
    bool pass = std::max(sr.max(), el.max()) <= tol;
    rep["pass"] = pass;
    std::cout << rep.dump(2) << std::endl;
    std::ofstream f(out_dir + "/construct_report.json");
    f << rep.dump(2) << "\n";
    return pass ? 0 : 1;
}

int cmd_convergence(const std::string& config_path, const std::string& check, const std::string& grids_arg,
                    const std::string& out_csv) {
    RunConfig cfg = load_or_default(config_path);
    std::vector<int> grids;
    for (const auto& tok : split_list(grids_arg)) grids.push_back(std::stoi(tok));
    ConvergenceStudy st = run_convergence(check, cfg, grids);
    std::string csv = st.csv();
    if (out_csv.empty()) {
        std::cout << csv;
    } else {
        std::ofstream f(out_csv);
        f << csv;
        std::cout << "fitted_order: " << (st.exact ? std::string("exact") : std::to_string(st.fitted_order)) << "\n";
    }
    if (!st.monotone) {
        std::cerr << "convergence: defects are not monotone under refinement\n";
        return 1;
    }
    return 0;
}

int cmd_action(const std::string& config_path, const std::string& fields_dir) {
    RunConfig cfg_unused = load_or_default(config_path);
    (void)cfg_unused;
    RunConfig cfg;
    std::unique_ptr<TargetChart> chart;
    std::unique_ptr<TorusGrid> grid;
    SuperField sf = read_superfield(fields_dir, cfg, chart, grid);
    ConformalFactor lam = cfg.lambda.make(*grid);

    MapGeometry geo(*grid, *chart, sf.phi, JetLevel::FirstOrder);
    GrassmannAction a1 = susy_action(geo, sf, lam);
    Spinor2Field psi{theta_to_eplus(sf.psi1_theta, SpinFrame(lam)), VecField(sf.phi.dim(), *grid)};
    json out;
    out["A"] = harmonic_action(geo);
    out["A1"] = {{"body", a1.body}, {"soul", {{"re", a1.soul.real()}, {"im", a1.soul.imag()}}}};
    out["A2"] = dirac_harmonic_action(geo, psi, lam);

    if (sf.psi2_theta.max_norm() == 0.0 && sf.xi.max_norm() == 0.0) {
        CompareA1A2Report cmp = compare_a1_a2(geo, sf.psi1_theta, lam);
        out["compare_a1_a2"] = {{"a1_condition_norm", cmp.a1_condition_norm},
                                {"a2_condition_norm", cmp.a2_condition_norm},
                                {"equivalence_defect", cmp.equivalence_defect},
                                {"product_rule_defect", cmp.product_rule_defect}};
    }
    std::cout << out.dump(2) << std::endl;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification toolkit for holomorphic supercurves and supersymmetric sigma-model identities"};
    app.require_subcommand(1);

    std::string config_path, checks_arg, out_dir = "out", grids_arg = "16,32,64", check_name, fields_dir, out_csv;
    long long seed_override = -1;

    CLI::App* verify = app.add_subcommand("verify", "run identity checks and write a suite report");
    verify->add_option("--config", config_path, "path to a JSON run configuration");
    verify->add_option("--checks", checks_arg, "comma-separated subset of checks");
    verify->add_option("--seed", seed_override, "override the configured seed");

    CLI::App* construct = app.add_subcommand("construct", "build the flat-torus holomorphic supercurve example");
    construct->add_option("--config", config_path, "path to a JSON run configuration");
    construct->add_option("--out", out_dir, "output directory for field files")->required();

    CLI::App* conv = app.add_subcommand("convergence", "defect vs grid-size study for one check");
    conv->add_option("--config", config_path, "path to a JSON run configuration");
    conv->add_option("--check", check_name, "check name")->required();
    conv->add_option("--grids", grids_arg, "comma-separated grid sizes (>= 3)");
    conv->add_option("--out", out_csv, "CSV output path (default stdout)");

    CLI::App* action = app.add_subcommand("action", "evaluate the action functionals on stored fields");
    action->add_option("--config", config_path, "path to a JSON run configuration");
    action->add_option("--fields", fields_dir, "directory with a superfield bundle")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify->parsed()) return cmd_verify(config_path, checks_arg, seed_override);
        if (construct->parsed()) return cmd_construct(config_path, out_dir);
        if (conv->parsed()) return cmd_convergence(config_path, check_name, grids_arg, out_csv);
        if (action->parsed()) return cmd_action(config_path, fields_dir);
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
