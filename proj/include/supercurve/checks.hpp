#pragma once

#include <optional>
#include <string>
#include <vector>

#include "supercurve/action.hpp"
#include "supercurve/config.hpp"

namespace supercurve {

struct CheckReport {
    std::string check;
    json lhs;
    std::vector<json> rhs_terms;
    double defect = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    json extra;  // check-specific numbers worth keeping

    json to_json(const GridSpec& grid) const;
};

struct SuiteReport {
    std::vector<CheckReport> checks;
    RunConfig config;
    bool pass() const;
    json to_json() const;
};

// Named verification checks; each builds its own fields from the config and
// the criterion's target. Unknown names raise std::invalid_argument.
CheckReport run_check(const std::string& name, const RunConfig& cfg);
std::vector<std::string> check_names();

// runs checks (all by default) with bounded concurrency; order of reports is
// the order of the names
SuiteReport run_suite(const RunConfig& cfg, std::vector<std::string> names = {});

// constructed holomorphic supercurve on a flat torus target
struct ConstructedExample {
    SuperField sf;
    bool degenerate = false;  // zero winding
};
ConstructedExample construct_supercurve(const TorusGrid& g, const FlatTorusTarget& target,
                                        const std::vector<std::pair<int, int>>& winding,
                                        const std::vector<Complex>& zeta1, const std::vector<Complex>& zeta2,
                                        const std::vector<Complex>& xi_const, double psi_scale = 1.0);

// defect of one named identity on one grid size, for the convergence study
double convergence_defect(const std::string& check, const RunConfig& cfg, int n);

struct ConvergenceRow {
    int n;
    double h, defect;
};
struct ConvergenceStudy {
    std::vector<ConvergenceRow> rows;
    double fitted_order = 0.0;
    bool exact = false;      // all defects at rounding floor
    bool monotone = true;
    std::string csv() const;
};
ConvergenceStudy run_convergence(const std::string& check, const RunConfig& cfg, const std::vector<int>& grids);

}  // namespace supercurve
