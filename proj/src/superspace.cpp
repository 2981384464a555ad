#include "supercurve/superspace.hpp"

namespace supercurve {

using grassmann_detail::merge_sign;
using grassmann_detail::popcount;

GrassmannField gf_add(const GrassmannField& a, const GrassmannField& b) {
    GrassmannField out = a;
    for (const auto& [m, f] : b.c) {
        auto it = out.c.find(m);
        if (it == out.c.end())
            out.c.emplace(m, f);
        else
            it->second += f;
    }
    return out;
}

GrassmannField gf_mul(const GrassmannField& a, const GrassmannField& b) {
    GrassmannField out(a.n_s, a.n_t);
    for (const auto& [ma, fa] : a.c)
        for (const auto& [mb, fb] : b.c) {
            int s = merge_sign(ma, mb);
            if (!s) continue;
            auto it = out.c.find(ma | mb);
            if (it == out.c.end()) it = out.c.emplace(ma | mb, ScalarField::Zero(out.n_s, out.n_t)).first;
            it->second.array() += double(s) * fa.array() * fb.array();
        }
    return out;
}

GrassmannField gf_scale(const GrassmannField& a, Complex v) {
    GrassmannField out = a;
    for (auto& [m, f] : out.c) f *= v;
    return out;
}

GrassmannField gf_berezin_deriv(const GrassmannField& a, unsigned gen_mask) {
    GrassmannField out(a.n_s, a.n_t);
    for (const auto& [m, f] : a.c) {
        if (!(m & gen_mask)) continue;
        int below = popcount(m & (gen_mask - 1));
        double s = (below & 1) ? -1.0 : 1.0;
        auto it = out.c.find(m ^ gen_mask);
        if (it == out.c.end()) it = out.c.emplace(m ^ gen_mask, ScalarField::Zero(out.n_s, out.n_t)).first;
        it->second += s * f;
    }
    return out;
}

GrassmannField gf_grid_deriv(const TorusGrid& g, const GrassmannField& a, Direction d) {
    GrassmannField out(a.n_s, a.n_t);
    for (const auto& [m, f] : a.c) out.c.emplace(m, g.deriv(f, d));
    return out;
}

GrassmannElement gf_integrate(const TorusGrid& g, const GrassmannField& a) {
    GrassmannElement e(4);
    for (const auto& [m, f] : a.c) e.coeff(m) = g.integrate(f);
    return e;
}

SuperfieldExpansion SuperfieldExpansion::build(const TorusGrid& g, const SuperField& sf) {
    SuperfieldExpansion X;
    const int d = sf.phi.dim();
    X.x.resize(d);
    RealField s = g.coord_s(), t = g.coord_t();
    for (int k = 0; k < d; ++k) {
        GrassmannField f(g.n_s(), g.n_t());
        // chart value of the map including the winding part; tensors composed
        // with it are lattice-periodic for torus targets, so the linear part
        // only ever enters through its exact derivative
        ScalarField body = sf.phi.periodic.c[k];
        body.array() += (sf.phi.slope_s[k] * s.array() + sf.phi.slope_t[k] * t.array()).cast<Complex>();
        f.c.emplace(0u, std::move(body));
        f.c.emplace(kThetaP | kEta1, sf.psi1_theta.c[k]);
        f.c.emplace(kThetaP | kEta2, sf.psi2_theta.c[k]);
        f.c.emplace(kEta1 | kEta2, sf.xi.c[k]);
        X.x[k] = std::move(f);
    }
    return X;
}

GrassmannField compose_first_order(const ScalarField& f_at_phi, const std::vector<const ScalarField*>& df_at_phi,
                                   const SuperfieldExpansion& X) {
    const int d = X.dim();
    GrassmannField out(int(f_at_phi.rows()), int(f_at_phi.cols()));
    out.c.emplace(0u, f_at_phi);
    static const unsigned nil_masks[3] = {kThetaP | kEta1, kThetaP | kEta2, kEta1 | kEta2};
    for (unsigned m : nil_masks) {
        ScalarField acc = ScalarField::Zero(out.n_s, out.n_t);
        bool any = false;
        for (int k = 0; k < d; ++k) {
            auto it = X.x[k].c.find(m);
            if (it == X.x[k].c.end()) continue;
            acc.array() += df_at_phi[k]->array() * it->second.array();
            any = true;
        }
        if (any) out.c.emplace(m, std::move(acc));
    }
    return out;
}

GrassmannField apply_d_plus(const TorusGrid& g, const GrassmannField& Xk) {
    GrassmannField dz = gf_grid_deriv(g, Xk, Direction::Z);
    GrassmannField theta_dz(Xk.n_s, Xk.n_t);
    for (const auto& [m, f] : dz.c) {
        int s = merge_sign(kThetaP, m);
        if (s) theta_dz.c.emplace(kThetaP | m, double(s) * f);
    }
    return gf_add(gf_berezin_deriv(Xk, kThetaP), theta_dz);
}

GrassmannField apply_d_minus(const TorusGrid& g, const GrassmannField& Xk) {
    GrassmannField dzb = gf_grid_deriv(g, Xk, Direction::Zbar);
    GrassmannField theta_dzb(Xk.n_s, Xk.n_t);
    for (const auto& [m, f] : dzb.c) {
        int s = merge_sign(kThetaM, m);
        if (s) theta_dzb.c.emplace(kThetaM | m, double(s) * f);
    }
    return gf_add(gf_berezin_deriv(Xk, kThetaM), theta_dzb);
}

GrassmannField berezin_theta(const GrassmannField& a) {
    return gf_berezin_deriv(gf_berezin_deriv(a, kThetaM), kThetaP);
}

}  // namespace supercurve
