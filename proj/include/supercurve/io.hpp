#pragma once

#include <string>

#include "supercurve/config.hpp"
#include "supercurve/fields.hpp"
#include "supercurve/grassmann.hpp"

namespace supercurve {

// Field file format: little-endian float64, row-major with the s index
// outermost ("s-major"), one .f64 file per real component, plus a JSON
// sidecar {"n_s","n_t","P_s","P_t","components","layout"}. Complex fields
// store re/im pairs per target component in order
// [re c0, im c0, re c1, im c1, ...].

void write_real_component(const std::string& path, const RealField& f);
RealField read_real_component(const std::string& path, int n_s, int n_t);

void write_vec_field(const std::string& dir, const std::string& name, const TorusGrid& g, const VecField& v,
                     bool complex_field);
VecField read_vec_field(const std::string& dir, const std::string& name, const TorusGrid& g, bool complex_field);

// SuperField bundle: field files for phi / psi1 / psi2 / xi plus a manifest
// listing the component roles and the grid, target, lambda and winding data.
void write_superfield(const std::string& dir, const RunConfig& cfg, const TorusGrid& g, const SuperField& sf);
SuperField read_superfield(const std::string& dir, RunConfig& cfg_out, std::unique_ptr<TargetChart>& chart_out,
                           std::unique_ptr<TorusGrid>& grid_out);

// GrassmannElement JSON: {"monomials": [{"gens":[...], "re":x, "im":y}]}
json grassmann_to_json(const GrassmannElement& e);
GrassmannElement grassmann_from_json(const json& j, int n_gens);

}  // namespace supercurve
