#pragma once

#include <map>

#include "supercurve/fields.hpp"
#include "supercurve/grassmann.hpp"

namespace supercurve {

// Generator bits of the 4-generator algebra, canonical order
// theta+ < theta- < eta1 < eta2.
constexpr unsigned kThetaP = 1u;
constexpr unsigned kThetaM = 2u;
constexpr unsigned kEta1 = 4u;
constexpr unsigned kEta2 = 8u;

// Grid field with values in the Grassmann algebra: sparse map from
// generator-subset mask to a coefficient field.
struct GrassmannField {
    int n_s = 0, n_t = 0;
    std::map<unsigned, ScalarField> c;

    GrassmannField() = default;
    GrassmannField(int ns, int nt) : n_s(ns), n_t(nt) {}

    ScalarField& at(unsigned mask) {
        auto it = c.find(mask);
        if (it == c.end()) it = c.emplace(mask, ScalarField::Zero(n_s, n_t)).first;
        return it->second;
    }
    ScalarField get(unsigned mask) const {
        auto it = c.find(mask);
        return it == c.end() ? ScalarField::Zero(n_s, n_t) : it->second;
    }

    GrassmannElement value(int i, int j) const {
        GrassmannElement e(4);
        for (const auto& [m, f] : c) e.coeff(m) = f(i, j);
        return e;
    }
};

GrassmannField gf_add(const GrassmannField& a, const GrassmannField& b);
GrassmannField gf_mul(const GrassmannField& a, const GrassmannField& b);
GrassmannField gf_scale(const GrassmannField& a, Complex v);
GrassmannField gf_berezin_deriv(const GrassmannField& a, unsigned gen_mask);
GrassmannField gf_grid_deriv(const TorusGrid& g, const GrassmannField& a, Direction d);

// coefficient-wise integral over the torus (Grassmann-linear)
GrassmannElement gf_integrate(const TorusGrid& g, const GrassmannField& a);

// Component expansion of a superfield: per target coordinate
// X^i = phi^i + theta+ (eta1 psi1^i + eta2 psi2^i) + eta1 eta2 xi^i.
// The nilpotent part nu = X - phi satisfies nu^a nu^b = 0 for all a, b, so
// composition with chart functions is exactly first order.
struct SuperfieldExpansion {
    std::vector<GrassmannField> x;

    static SuperfieldExpansion build(const TorusGrid& g, const SuperField& sf);
    int dim() const { return int(x.size()); }
};

// f(X) = f(phi) + d_k f(phi) nu^k for grid fields f(phi), df(phi)
GrassmannField compose_first_order(const ScalarField& f_at_phi, const std::vector<const ScalarField*>& df_at_phi,
                                   const SuperfieldExpansion& X);

// super vector fields D+ = d/dtheta+ + theta+ d/dz and D- = d/dtheta- + theta- d/dzbar
GrassmannField apply_d_plus(const TorusGrid& g, const GrassmannField& Xk);
GrassmannField apply_d_minus(const TorusGrid& g, const GrassmannField& Xk);

// d/dtheta+ d/dtheta- of a 4-generator field, as a field over eta1, eta2 only
// (still stored in the 4-generator masks).
GrassmannField berezin_theta(const GrassmannField& a);

}  // namespace supercurve
