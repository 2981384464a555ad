#include "supercurve/action.hpp"

#include <cmath>
#include <stdexcept>

namespace supercurve {

namespace {

// complex-bilinear g(a, b) along the map, as a grid field
ScalarField g_pair(const MapGeometry& geo, const VecField& a, const VecField& b) {
    const int d = geo.chart.dim();
    ScalarField out = ScalarField::Zero(geo.grid.n_s(), geo.grid.n_t());
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) out.array() += geo.metric_entry(i, j).array() * a.c[i].array() * b.c[j].array();
    return out;
}

ScalarField omega_pair(const MapGeometry& geo, const VecField& a, const VecField& b) {
    const int d = geo.chart.dim();
    ScalarField out = ScalarField::Zero(geo.grid.n_s(), geo.grid.n_t());
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) out.array() += geo.omega_entry(i, j).array() * a.c[i].array() * b.c[j].array();
    return out;
}

double real_or_throw(Complex v, double scale, const char* what) {
    if (std::abs(v.imag()) > 1e-8 * std::max(1.0, scale))
        throw std::runtime_error(std::string("unexpected imaginary part in ") + what);
    return v.real();
}

}  // namespace

double harmonic_action(const MapGeometry& geo) {
    ScalarField dens = g_pair(geo, geo.phi_s, geo.phi_s) + g_pair(geo, geo.phi_t, geo.phi_t);
    Complex v = 0.5 * geo.grid.integrate(dens);
    return real_or_throw(v, std::abs(v), "harmonic action");
}

double pullback_omega_integral(const MapGeometry& geo) {
    Complex v = geo.grid.integrate(omega_pair(geo, geo.phi_s, geo.phi_t));
    return real_or_throw(v, std::abs(v), "omega pullback integral");
}

double dbar_energy(const MapGeometry& geo) {
    OneFormVec db = dbar_j(geo);
    Complex v = 2.0 * geo.grid.integrate(g_pair(geo, db.s_comp, db.s_comp));
    return real_or_throw(v, std::abs(v), "dbar energy");
}

ClassicalIdentityReport verify_classical_identity(const MapGeometry& geo) {
    ClassicalIdentityReport r{};
    r.energy = harmonic_action(geo);
    r.omega_term = pullback_omega_integral(geo);
    r.dbar_term = dbar_energy(geo);
    r.defect = std::abs(r.energy - r.omega_term - r.dbar_term);
    double scale = std::max({1.0, std::abs(r.energy), std::abs(r.omega_term), std::abs(r.dbar_term)});
    r.rel_defect = r.defect / scale;
    return r;
}

ScalarField b_pairing_field(const MapGeometry& geo, const Spinor2Field& a, const Spinor2Field& b) {
    return g_pair(geo, a.e_plus, b.e_minus) + g_pair(geo, a.e_minus, b.e_plus);
}

RealField h_pairing_field(const MapGeometry& geo, const Spinor2Field& a, const Spinor2Field& b) {
    Spinor2Field ac;
    ac.e_plus = a.e_plus;
    ac.e_minus = a.e_minus;
    for (auto& f : ac.e_plus.c) f = f.conjugate();
    for (auto& f : ac.e_minus.c) f = f.conjugate();
    ScalarField s = g_pair(geo, ac.e_plus, b.e_plus) + g_pair(geo, ac.e_minus, b.e_minus);
    return s.real();
}

GrassmannAction susy_action(const MapGeometry& geo, const SuperField& sf, const ConformalFactor& lam) {
    GrassmannAction out;
    out.body = harmonic_action(geo);

    VecField tau = tension(geo, lam);
    Complex xi_term = geo.grid.integrate_dvol(g_pair(geo, sf.xi, tau), lam.lambda);

    // psi = eta1 psi1 + eta2 psi2 embedded in S+; Dirac term through the
    // Grassmann-extended B-pairing, eta1 eta2 coefficient
    SpinFrame fr(lam);
    Spinor2Field p1{theta_to_eplus(sf.psi1_theta, fr), VecField(sf.phi.dim(), geo.grid)};
    Spinor2Field p2{theta_to_eplus(sf.psi2_theta, fr), VecField(sf.phi.dim(), geo.grid)};
    Spinor2Field dp1 = dirac(geo, p1, fr);
    Spinor2Field dp2 = dirac(geo, p2, fr);
    Complex b12 = geo.grid.integrate_dvol(b_pairing_field(geo, p1, dp2), lam.lambda);
    Complex b21 = geo.grid.integrate_dvol(b_pairing_field(geo, p2, dp1), lam.lambda);

    out.soul = -xi_term + Conventions::dirac_term_coeff * (b12 - b21);
    return out;
}

double dirac_harmonic_action(const MapGeometry& geo, const Spinor2Field& psi, const ConformalFactor& lam) {
    ScalarField e = g_pair(geo, geo.phi_s, geo.phi_s) + g_pair(geo, geo.phi_t, geo.phi_t);
    RealField energy_density = e.real();  // |dphi|^2 dvol = (|phi_s|^2 + |phi_t|^2) ds dt
    Spinor2Field dpsi = dirac(geo, psi, SpinFrame(lam));
    RealField dirac_density = h_pairing_field(geo, psi, dpsi);
    return geo.grid.integrate(energy_density) + geo.grid.integrate_dvol(dirac_density, lam.lambda);
}

// ---- superspace route ----

namespace {

struct SuperVectors {
    SuperfieldExpansion X;
    std::vector<GrassmannField> vplus, vminus;
};

SuperVectors build_super_vectors(const MapGeometry& geo, const SuperField& sf) {
    SuperVectors sv;
    sv.X = SuperfieldExpansion::build(geo.grid, sf);
    const int d = sv.X.dim();
    sv.vplus.reserve(d);
    sv.vminus.reserve(d);
    for (int k = 0; k < d; ++k) {
        // the winding part of X^k is linear in (s,t); differentiate the
        // periodic body and add the exact slope
        GrassmannField Xk = sv.X.x[k];
        GrassmannField body_only = Xk;
        body_only.c[0] = sf.phi.periodic.c[k];
        GrassmannField dp = apply_d_plus(geo.grid, body_only);
        GrassmannField dm = apply_d_minus(geo.grid, body_only);
        Complex sz = 0.5 * (sf.phi.slope_s[k] - Complex(0, 1) * sf.phi.slope_t[k]);
        Complex szb = 0.5 * (sf.phi.slope_s[k] + Complex(0, 1) * sf.phi.slope_t[k]);
        dp.at(kThetaP).array() += sz;
        dm.at(kThetaM).array() += szb;
        sv.vplus.push_back(std::move(dp));
        sv.vminus.push_back(std::move(dm));
    }
    return sv;
}

std::vector<GrassmannField> compose_matrix_entries(
    const MapGeometry& geo, const SuperfieldExpansion& X,
    const std::function<const ScalarField&(int, int)>& entry,
    const std::function<const ScalarField&(int, int, int)>& dentry) {
    const int d = X.dim();
    std::vector<GrassmannField> out(size_t(d) * d);
    std::vector<const ScalarField*> df(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            for (int l = 0; l < d; ++l) df[l] = &dentry(l, i, j);
            out[size_t(i) * d + j] = compose_first_order(entry(i, j), df, X);
        }
    return out;
}

GrassmannAction integrate_density(const MapGeometry& geo, const GrassmannField& berezin, Complex prefactor) {
    // L = prefactor * dz^dzbar * berezin; dz^dzbar = -2i ds dt
    Complex measure = prefactor * Conventions::dz_wedge_dzbar_to_dsdt;
    GrassmannAction out;
    Complex body = measure * geo.grid.integrate(berezin.get(0u));
    out.body = real_or_throw(body, std::abs(body) + 1.0, "superspace action body");
    out.soul = measure * geo.grid.integrate(berezin.get(kEta1 | kEta2));
    return out;
}

}  // namespace

GrassmannField super_lagrangian_density(const MapGeometry& geo, const SuperField& sf) {
    SuperVectors sv = build_super_vectors(geo, sf);
    const int d = sv.X.dim();
    auto gc = compose_matrix_entries(
        geo, sv.X, [&](int i, int j) -> const ScalarField& { return geo.metric_entry(i, j); },
        [&](int l, int i, int j) -> const ScalarField& { return geo.metric_deriv_entry(l, i, j); });
    GrassmannField prod(geo.grid.n_s(), geo.grid.n_t());
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            prod = gf_add(prod, gf_mul(gf_mul(gc[size_t(i) * d + j], sv.vplus[i]), sv.vminus[j]));
    return berezin_theta(prod);
}

GrassmannAction super_lagrangian_integral(const MapGeometry& geo, const SuperField& sf) {
    return integrate_density(geo, super_lagrangian_density(geo, sf), Complex(0, -1));
}

namespace {

// (0,1)/(1,0) projections of the super one-form slots:
// dbar+ = (V+ + i J_Phi V+) / 2,  dbar- = (V- - i J_Phi V-) / 2
std::vector<GrassmannField> project_super(const MapGeometry& geo, const SuperfieldExpansion& X,
                                          const std::vector<GrassmannField>& V, Complex i_sign) {
    const int d = X.dim();
    auto jc = compose_matrix_entries(
        geo, X, [&](int i, int k) -> const ScalarField& { return geo.j_entry(i, k); },
        [&](int l, int i, int k) -> const ScalarField& { return geo.j_deriv_entry(l, i, k); });
    std::vector<GrassmannField> out(d);
    for (int i = 0; i < d; ++i) {
        GrassmannField acc = V[i];
        for (int k = 0; k < d; ++k)
            acc = gf_add(acc, gf_scale(gf_mul(jc[size_t(i) * d + k], V[k]), i_sign));
        out[i] = gf_scale(acc, 0.5);
    }
    return out;
}

}  // namespace

GrassmannAction super_lagrangian_dbar_integral(const MapGeometry& geo, const SuperField& sf) {
    SuperVectors sv = build_super_vectors(geo, sf);
    const int d = sv.X.dim();
    auto gc = compose_matrix_entries(
        geo, sv.X, [&](int i, int j) -> const ScalarField& { return geo.metric_entry(i, j); },
        [&](int l, int i, int j) -> const ScalarField& { return geo.metric_deriv_entry(l, i, j); });
    auto dbp = project_super(geo, sv.X, sv.vplus, Complex(0, 1));
    auto dbm = project_super(geo, sv.X, sv.vminus, Complex(0, -1));
    GrassmannField prod(geo.grid.n_s(), geo.grid.n_t());
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            prod = gf_add(prod, gf_mul(gf_mul(gc[size_t(i) * d + j], dbp[i]), dbm[j]));
    return integrate_density(geo, berezin_theta(prod), Complex(0, -2));
}

GrassmannAction super_lagrangian_omega_integral(const MapGeometry& geo, const SuperField& sf) {
    SuperVectors sv = build_super_vectors(geo, sf);
    const int d = sv.X.dim();
    auto oc = compose_matrix_entries(
        geo, sv.X, [&](int i, int j) -> const ScalarField& { return geo.omega_entry(i, j); },
        [&](int l, int i, int j) -> const ScalarField& { return geo.omega_deriv_entry(l, i, j); });
    GrassmannField prod(geo.grid.n_s(), geo.grid.n_t());
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            prod = gf_add(prod, gf_mul(gf_mul(oc[size_t(i) * d + j], sv.vplus[i]), sv.vminus[j]));
    // L_omega = -i dz^dzbar (-i omega_Phi(dPhi D+, dPhi D-)) under the Berezin derivative
    return integrate_density(geo, berezin_theta(prod), Complex(0, -1) * Complex(0, -1));
}

LagrangianDecomposition lagrangian_decompose(const MapGeometry& geo, const SuperField& sf) {
    LagrangianDecomposition out;
    out.total = super_lagrangian_integral(geo, sf);
    out.dbar_part = super_lagrangian_dbar_integral(geo, sf);
    out.omega_part = super_lagrangian_omega_integral(geo, sf);
    GrassmannAction sum = out.dbar_part + out.omega_part;
    out.pointwise_defect = std::max(std::abs(out.total.body - sum.body), std::abs(out.total.soul - sum.soul));
    return out;
}

void hand_density(const MapGeometry& geo, const SuperField& sf, ScalarField& body, ScalarField& soul) {
    const TorusGrid& g = geo.grid;
    VecField xi_z = deriv(g, sf.xi, Direction::Z);
    VecField xi_zb = deriv(g, sf.xi, Direction::Zbar);

    body = g_pair(geo, geo.phi_z, geo.phi_zbar);

    // eta1 eta2 part of phi0(g_ij) dz phi0^i dzbar phi0^j
    soul = g_pair(geo, xi_z, geo.phi_zbar) + g_pair(geo, geo.phi_z, xi_zb);
    const int d = geo.chart.dim();
    for (int l = 0; l < d; ++l)
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                soul.array() += sf.xi.c[l].array() * geo.metric_deriv_entry(l, i, j).array() *
                                geo.phi_z.c[i].array() * geo.phi_zbar.c[j].array();

    // minus <psi_+, nabla_zbar psi_+> with psi_+ = eta1 psi1 + eta2 psi2
    VecField n1 = pullback_nabla(geo, sf.psi1_theta, Direction::Zbar);
    VecField n2 = pullback_nabla(geo, sf.psi2_theta, Direction::Zbar);
    soul -= g_pair(geo, sf.psi1_theta, n2) - g_pair(geo, sf.psi2_theta, n1);
}

SuperIdentityReport verify_super_identity(const MapGeometry& geo, const SuperField& sf) {
    SuperIdentityReport r;
    r.total = super_lagrangian_integral(geo, sf);
    r.omega_term = pullback_omega_integral(geo);
    r.dbar_term = super_lagrangian_dbar_integral(geo, sf);
    r.defect_body = std::abs(r.total.body - r.omega_term - r.dbar_term.body);
    r.defect_soul = std::abs(r.total.soul - r.dbar_term.soul);
    double scale = std::max({1.0, std::abs(r.total.body), std::abs(r.omega_term), std::abs(r.total.soul)});
    r.rel_defect = std::max(r.defect_body, r.defect_soul) / scale;
    return r;
}

// ---- Euler-Lagrange residuals ----

ElResiduals el_residuals(const MapGeometry& geo, const SuperField& sf, const ConformalFactor& lam) {
    if (!geo.jet(0, 0).has_curvature) throw std::invalid_argument("el_residuals: needs curvature-level geometry");
    ElResiduals r;
    r.tau_field = tension(geo, lam);
    r.psi1_field = pullback_nabla(geo, sf.psi1_theta, Direction::Zbar);
    r.psi2_field = pullback_nabla(geo, sf.psi2_theta, Direction::Zbar);

    const int d = geo.chart.dim();
    VecField lap = pullback_nabla(geo, pullback_nabla(geo, sf.xi, Direction::S), Direction::S) +
                   pullback_nabla(geo, pullback_nabla(geo, sf.xi, Direction::T), Direction::T);
    r.xi_field = VecField(d, geo.grid);
    for (int i = 0; i < geo.grid.n_s(); ++i)
        for (int j = 0; j < geo.grid.n_t(); ++j) {
            const ChartJet& jt = geo.jet(i, j);
            Eigen::VectorXcd xi = sf.xi.at(i, j);
            Eigen::VectorXcd ps = geo.phi_s.at(i, j), pt = geo.phi_t.at(i, j), pzb = geo.phi_zbar.at(i, j);
            Eigen::VectorXcd v = lap.at(i, j);
            v += curvature_apply(jt, xi, ps, ps);
            v += curvature_apply(jt, xi, pt, pt);
            v += Conventions::el4_psi_coeff * curvature_apply(jt, sf.psi1_theta.at(i, j), sf.psi2_theta.at(i, j), pzb);
            r.xi_field.set(i, j, v / lam.lambda(i, j));
        }

    r.tau = r.tau_field.max_norm();
    r.psi1 = r.psi1_field.max_norm();
    r.psi2 = r.psi2_field.max_norm();
    r.xi = r.xi_field.max_norm();
    return r;
}

// ---- variational checks ----

GrassmannAction directional_derivative(const TorusGrid& grid, const TargetChart& chart, const ConformalFactor& lam,
                                       const SuperField& sf, const Variation& v, Functional f, double eps,
                                       bool* cancellation_warning) {
    if (eps <= 0) throw std::invalid_argument("directional_derivative: eps must be positive");
    auto shifted = [&](double sgn) {
        SuperField s = sf;
        for (int k = 0; k < sf.phi.dim(); ++k) s.phi.periodic.c[k] += sgn * eps * v.zeta.c[k];
        s.psi1_theta = s.psi1_theta + v.gamma1 * Complex(sgn * eps);
        s.psi2_theta = s.psi2_theta + v.gamma2 * Complex(sgn * eps);
        s.xi = s.xi + v.chi * Complex(sgn * eps);
        return s;
    };
    auto value = [&](const SuperField& s) -> GrassmannAction {
        MapGeometry geo(grid, chart, s.phi, JetLevel::FirstOrder);
        switch (f) {
            case Functional::Harmonic: return {harmonic_action(geo), Complex(0, 0)};
            case Functional::Susy: return susy_action(geo, s, lam);
            case Functional::DiracHarmonic: {
                Spinor2Field psi{theta_to_eplus(s.psi1_theta, SpinFrame(lam)), VecField(s.phi.dim(), grid)};
                return {dirac_harmonic_action(geo, psi, lam), Complex(0, 0)};
            }
        }
        return {};
    };
    SuperField plus = shifted(1.0), minus = shifted(-1.0);
    GrassmannAction fp = value(plus), fm = value(minus);
    GrassmannAction out = (fp - fm) * (1.0 / (2.0 * eps));
    if (cancellation_warning) {
        double scale = std::max({std::abs(fp.body), std::abs(fm.body), std::abs(fp.soul), std::abs(fm.soul)});
        double diff = std::max(std::abs(fp.body - fm.body), std::abs(fp.soul - fm.soul));
        *cancellation_warning = (scale > 0 && diff < 64 * std::numeric_limits<double>::epsilon() * scale);
    }
    return out;
}

GrassmannAction el_pairing(const MapGeometry& geo, const SuperField& sf, const ConformalFactor& lam,
                           const Variation& v) {
    if (!geo.jet(0, 0).has_curvature) throw std::invalid_argument("el_pairing: needs curvature-level geometry");
    GrassmannAction out;
    VecField tau = tension(geo, lam);
    Complex body = -geo.grid.integrate_dvol(g_pair(geo, v.zeta, tau), lam.lambda);
    out.body = real_or_throw(body, std::abs(body) + 1.0, "pairing body");

    ElResiduals el = el_residuals(geo, sf, lam);
    Complex soul = -geo.grid.integrate_dvol(g_pair(geo, v.chi, tau), lam.lambda);
    soul -= geo.grid.integrate_dvol(g_pair(geo, el.xi_field, v.zeta), lam.lambda);
    VecField n1 = pullback_nabla(geo, sf.psi1_theta, Direction::Zbar);
    VecField n2 = pullback_nabla(geo, sf.psi2_theta, Direction::Zbar);
    soul -= 4.0 * (geo.grid.integrate(g_pair(geo, v.gamma1, n2)) - geo.grid.integrate(g_pair(geo, v.gamma2, n1)));
    out.soul = soul;
    return out;
}

CompareA1A2Report compare_a1_a2(const MapGeometry& geo, const VecField& psi1_theta, const ConformalFactor& lam) {
    CompareA1A2Report r{};
    SpinFrame fr(lam);
    VecField psi_e = theta_to_eplus(psi1_theta, fr);
    VecField r_theta = pullback_nabla(geo, psi1_theta, Direction::Zbar);
    VecField r_e = pullback_nabla(geo, psi_e, Direction::Zbar);
    r.a1_condition_norm = r_theta.max_norm();
    r.a2_condition_norm = r_e.max_norm();

    ScalarField lam_q = fr.lam_quarter.cast<Complex>();
    ScalarField dzb_lam_q = geo.grid.deriv(lam_q, Direction::Zbar);
    VecField scaled = r_e, prod = psi_e;
    for (auto& f : scaled.c) f = f.cwiseProduct(lam_q);
    for (auto& f : prod.c) f = f.cwiseProduct(dzb_lam_q);
    r.equivalence_defect = (r_theta - scaled).max_norm();
    r.product_rule_defect = (r_theta - scaled - prod).max_norm();
    return r;
}

}  // namespace supercurve
