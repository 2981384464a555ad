#include "supercurve/fields.hpp"

#include <cmath>
#include <stdexcept>

namespace supercurve {

VecField deriv(const TorusGrid& g, const VecField& f, Direction d) {
    VecField out = f;
    for (auto& comp : out.c) comp = g.deriv(comp, d);
    return out;
}

VecField MapField::d(const TorusGrid& g, Direction dir) const {
    VecField out = deriv(g, periodic, dir);
    Eigen::VectorXcd slope(dim());
    switch (dir) {
        case Direction::S: slope = slope_s.cast<Complex>(); break;
        case Direction::T: slope = slope_t.cast<Complex>(); break;
        case Direction::Z: slope = 0.5 * (slope_s.cast<Complex>() - Complex(0, 1) * slope_t.cast<Complex>()); break;
        case Direction::Zbar: slope = 0.5 * (slope_s.cast<Complex>() + Complex(0, 1) * slope_t.cast<Complex>()); break;
    }
    for (int k = 0; k < dim(); ++k) out.c[k].array() += slope[k];
    return out;
}

MapField linear_torus_map(const TorusGrid& g, int dim, const std::vector<std::pair<int, int>>& winding) {
    if (int(winding.size()) * 2 != dim) throw std::invalid_argument("linear_torus_map: one winding pair per complex block");
    MapField m = MapField::zero(dim, g);
    // phi(z) = a z per block, a = p + i q: phi_x + i phi_y = (p + iq)(s + it)
    for (int b = 0; b < dim / 2; ++b) {
        double p = winding[b].first, q = winding[b].second;
        m.slope_s[2 * b] = p;
        m.slope_s[2 * b + 1] = q;
        m.slope_t[2 * b] = -q;
        m.slope_t[2 * b + 1] = p;
    }
    // lattice compatibility: increments over the periods must be lattice vectors;
    // with the unit lattice this holds for integer windings and unit periods.
    return m;
}

MapGeometry::MapGeometry(const TorusGrid& grid_, const TargetChart& chart_, const MapField& phi_, JetLevel level)
    : grid(grid_), chart(chart_), phi(phi_) {
    if (phi.dim() != chart.dim()) throw std::invalid_argument("MapGeometry: map/target dimension mismatch");
    if (phi.has_winding() && chart.kind() != "flat_torus")
        throw std::invalid_argument("MapGeometry: winding maps require a flat torus target");
    phi_s = phi.d(grid, Direction::S);
    phi_t = phi.d(grid, Direction::T);
    phi_z = phi.d(grid, Direction::Z);
    phi_zbar = phi.d(grid, Direction::Zbar);

    constant_ = chart.is_flat_constant();
    if (constant_) {
        jets_.resize(1);
        chart.eval(Eigen::VectorXd::Zero(chart.dim()), level, jets_[0]);
    } else {
        jets_.resize(size_t(grid.n_s()) * grid.n_t());
        for (int i = 0; i < grid.n_s(); ++i)
            for (int j = 0; j < grid.n_t(); ++j) chart.eval(phi.value(grid, i, j), level, jets_[size_t(i) * grid.n_t() + j]);
    }
}

void MapGeometry::build_tables() const {
    if (tables_built_) return;
    const int d = chart.dim();
    const int ns = grid.n_s(), nt = grid.n_t();
    g_fields_.assign(size_t(d) * d, ScalarField(ns, nt));
    om_fields_.assign(size_t(d) * d, ScalarField(ns, nt));
    j_fields_.assign(size_t(d) * d, ScalarField(ns, nt));
    dg_fields_.assign(size_t(d) * d * d, ScalarField(ns, nt));
    dom_fields_.assign(size_t(d) * d * d, ScalarField(ns, nt));
    dj_fields_.assign(size_t(d) * d * d, ScalarField(ns, nt));
    for (int i = 0; i < ns; ++i)
        for (int j = 0; j < nt; ++j) {
            const ChartJet& jt = jet(i, j);
            for (int a = 0; a < d; ++a)
                for (int b = 0; b < d; ++b) {
                    g_fields_[size_t(a) * d + b](i, j) = jt.g(a, b);
                    om_fields_[size_t(a) * d + b](i, j) = jt.omega(a, b);
                    j_fields_[size_t(a) * d + b](i, j) = jt.J(a, b);
                    for (int l = 0; l < d; ++l) {
                        dg_fields_[(size_t(l) * d + a) * d + b](i, j) = jt.dg(l, a, b);
                        dom_fields_[(size_t(l) * d + a) * d + b](i, j) = jt.domega(l, a, b);
                        dj_fields_[(size_t(l) * d + a) * d + b](i, j) = jt.dJ(l, a, b);
                    }
                }
        }
    tables_built_ = true;
}

const ScalarField& MapGeometry::metric_entry(int i, int j) const {
    build_tables();
    return g_fields_[size_t(i) * chart.dim() + j];
}
const ScalarField& MapGeometry::metric_deriv_entry(int l, int i, int j) const {
    build_tables();
    return dg_fields_[(size_t(l) * chart.dim() + i) * chart.dim() + j];
}
const ScalarField& MapGeometry::omega_entry(int i, int j) const {
    build_tables();
    return om_fields_[size_t(i) * chart.dim() + j];
}
const ScalarField& MapGeometry::omega_deriv_entry(int l, int i, int j) const {
    build_tables();
    return dom_fields_[(size_t(l) * chart.dim() + i) * chart.dim() + j];
}
const ScalarField& MapGeometry::j_entry(int i, int k) const {
    build_tables();
    return j_fields_[size_t(i) * chart.dim() + k];
}
const ScalarField& MapGeometry::j_deriv_entry(int l, int i, int k) const {
    build_tables();
    return dj_fields_[(size_t(l) * chart.dim() + i) * chart.dim() + k];
}

namespace {

// pointwise J(phi) v over the grid
VecField apply_j(const MapGeometry& geo, const VecField& v) {
    const int d = geo.chart.dim();
    VecField out(d, geo.grid);
    for (int i = 0; i < geo.grid.n_s(); ++i)
        for (int j = 0; j < geo.grid.n_t(); ++j) {
            const auto& J = geo.jet(i, j).J;
            out.set(i, j, J.cast<Complex>() * v.at(i, j));
        }
    return out;
}

}  // namespace

OneFormVec dbar_j(const MapGeometry& geo) {
    OneFormVec out;
    VecField jpt = apply_j(geo, geo.phi_t);
    out.s_comp = (geo.phi_s + jpt) * 0.5;
    out.t_comp = apply_j(geo, out.s_comp) * Complex(-1.0);
    return out;
}

OneFormVec partial_j(const MapGeometry& geo) {
    OneFormVec out;
    VecField jpt = apply_j(geo, geo.phi_t);
    out.s_comp = (geo.phi_s - jpt) * 0.5;
    out.t_comp = apply_j(geo, out.s_comp);
    return out;
}

VecField pullback_nabla(const MapGeometry& geo, const VecField& sec, Direction dir) {
    const int d = geo.chart.dim();
    VecField out = deriv(geo.grid, sec, dir);
    const VecField* dphi = nullptr;
    switch (dir) {
        case Direction::S: dphi = &geo.phi_s; break;
        case Direction::T: dphi = &geo.phi_t; break;
        case Direction::Z: dphi = &geo.phi_z; break;
        case Direction::Zbar: dphi = &geo.phi_zbar; break;
    }
    for (int i = 0; i < geo.grid.n_s(); ++i)
        for (int j = 0; j < geo.grid.n_t(); ++j) {
            const ChartJet& jt = geo.jet(i, j);
            Eigen::VectorXcd dp = dphi->at(i, j), sv = sec.at(i, j);
            Eigen::VectorXcd corr = Eigen::VectorXcd::Zero(d);
            for (int k = 0; k < d; ++k) {
                Complex acc = 0;
                for (int l = 0; l < d; ++l)
                    for (int m = 0; m < d; ++m) acc += jt.gamma(k, l, m) * dp[l] * sv[m];
                corr[k] = acc;
            }
            out.set(i, j, out.at(i, j) + corr);
        }
    return out;
}

VecField tension(const MapGeometry& geo, const ConformalFactor& lam) {
    const int d = geo.chart.dim();
    VecField ddphi = deriv(geo.grid, geo.phi_z, Direction::Zbar);
    VecField out(d, geo.grid);
    for (int i = 0; i < geo.grid.n_s(); ++i)
        for (int j = 0; j < geo.grid.n_t(); ++j) {
            const ChartJet& jt = geo.jet(i, j);
            Eigen::VectorXcd pz = geo.phi_z.at(i, j), pzb = geo.phi_zbar.at(i, j);
            Eigen::VectorXcd v = ddphi.at(i, j);
            for (int k = 0; k < d; ++k) {
                Complex acc = v[k];
                for (int l = 0; l < d; ++l)
                    for (int m = 0; m < d; ++m) acc += jt.gamma(k, l, m) * pz[l] * pzb[m];
                v[k] = 4.0 / lam.lambda(i, j) * acc;
            }
            out.set(i, j, v);
        }
    return out;
}

VecField tension_trace_form(const MapGeometry& geo, const ConformalFactor& lam) {
    VecField nss = pullback_nabla(geo, geo.phi_s, Direction::S);
    VecField ntt = pullback_nabla(geo, geo.phi_t, Direction::T);
    VecField out = nss + ntt;
    for (auto& f : out.c) f = f.cwiseQuotient(lam.lambda.cast<Complex>());
    return out;
}

OneFormVec linearized_dbar(const MapGeometry& geo, const VecField& sec) {
    const int d = geo.chart.dim();
    VecField ns = pullback_nabla(geo, sec, Direction::S);
    VecField nt = pullback_nabla(geo, sec, Direction::T);
    OneFormVec pj = partial_j(geo);
    OneFormVec out;
    out.s_comp = VecField(d, geo.grid);
    out.t_comp = VecField(d, geo.grid);
    for (int i = 0; i < geo.grid.n_s(); ++i)
        for (int j = 0; j < geo.grid.n_t(); ++j) {
            const ChartJet& jt = geo.jet(i, j);
            const Eigen::MatrixXcd J = jt.J.cast<Complex>();
            Eigen::VectorXcd xs = ns.at(i, j), xt = nt.at(i, j), xi = sec.at(i, j);
            // (nabla_xi J)^i_k, complex-linear in xi
            Eigen::MatrixXcd nxJ = Eigen::MatrixXcd::Zero(d, d);
            for (int l = 0; l < d; ++l)
                for (int a = 0; a < d; ++a)
                    for (int k = 0; k < d; ++k) nxJ(a, k) += xi[l] * jt.nabla_j(l, a, k);
            Eigen::VectorXcd s_val = 0.5 * (xs + J * xt) - 0.5 * J * (nxJ * pj.s_comp.at(i, j));
            Eigen::VectorXcd t_val = 0.5 * (xt - J * xs) - 0.5 * J * (nxJ * pj.t_comp.at(i, j));
            out.s_comp.set(i, j, s_val);
            out.t_comp.set(i, j, t_val);
        }
    return out;
}

OneFormVec linearized_dbar_compat(const MapGeometry& geo, const VecField& sec) {
    const int d = geo.chart.dim();
    VecField ns = pullback_nabla(geo, sec, Direction::S);
    VecField nt = pullback_nabla(geo, sec, Direction::T);
    OneFormVec pj = partial_j(geo);
    OneFormVec out;
    out.s_comp = VecField(d, geo.grid);
    out.t_comp = VecField(d, geo.grid);
    for (int i = 0; i < geo.grid.n_s(); ++i)
        for (int j = 0; j < geo.grid.n_t(); ++j) {
            const ChartJet& jt = geo.jet(i, j);
            const Eigen::MatrixXcd J = jt.J.cast<Complex>();
            Eigen::VectorXcd xi = sec.at(i, j);
            Eigen::VectorXcd dps = geo.phi_s.at(i, j), dpt = geo.phi_t.at(i, j);
            // (nabla_a J) along the map for a = s, t
            Eigen::MatrixXcd nJs = Eigen::MatrixXcd::Zero(d, d), nJt = Eigen::MatrixXcd::Zero(d, d);
            for (int l = 0; l < d; ++l)
                for (int a = 0; a < d; ++a)
                    for (int k = 0; k < d; ++k) {
                        nJs(a, k) += dps[l] * jt.nabla_j(l, a, k);
                        nJt(a, k) += dpt[l] * jt.nabla_j(l, a, k);
                    }
            // J-preserving connection: nabla^J_a = nabla_a - (1/2) J (nabla_a J)
            Eigen::VectorXcd cjs = ns.at(i, j) - 0.5 * J * (nJs * xi);
            Eigen::VectorXcd cjt = nt.at(i, j) - 0.5 * J * (nJt * xi);
            // (0,1) part, then the Nijenhuis correction
            Eigen::VectorXcd s_val = 0.5 * (cjs + J * cjt);
            Eigen::VectorXcd t_val = 0.5 * (cjt - J * cjs);
            Eigen::VectorXcd njs = nijenhuis_apply(jt, xi, pj.s_comp.at(i, j));
            Eigen::VectorXcd njt = nijenhuis_apply(jt, xi, pj.t_comp.at(i, j));
            out.s_comp.set(i, j, s_val + 0.25 * njs);
            out.t_comp.set(i, j, t_val + 0.25 * njt);
        }
    return out;
}

Spinor2Field dirac(const MapGeometry& geo, const Spinor2Field& psi, const SpinFrame& frame) {
    Spinor2Field out;
    VecField nz_minus = pullback_nabla(geo, psi.e_minus, Direction::Z);
    VecField nzb_plus = pullback_nabla(geo, psi.e_plus, Direction::Zbar);
    const Eigen::ArrayXXd& s = frame.lam_neg_half.array();
    out.e_plus = nz_minus * Complex(-2.0);
    out.e_minus = nzb_plus * Complex(2.0);
    for (auto& f : out.e_plus.c) f.array() *= s.cast<Complex>();
    for (auto& f : out.e_minus.c) f.array() *= s.cast<Complex>();
    return out;
}

VecField induced_spinor(const MapGeometry& geo, const ScalarField& zeta_minus) {
    VecField out = geo.phi_z;
    for (auto& f : out.c) f = f.cwiseProduct(zeta_minus);
    return out;
}

VecField project_10(const MapGeometry& geo, const VecField& v) {
    VecField jv = apply_j(geo, v);
    return (v - jv * Complex(0, 1)) * 0.5;
}

VecField residual_10(const MapGeometry& geo, const VecField& v) {
    VecField jv = apply_j(geo, v);
    return v + jv * Complex(0, 1);
}

SupercurveResiduals supercurve_residuals(const MapGeometry& geo, const SuperField& sf) {
    SupercurveResiduals r;
    const int d = geo.chart.dim();
    r.nijenhuis_field = VecField(d, geo.grid);
    for (int i = 0; i < geo.grid.n_s(); ++i)
        for (int j = 0; j < geo.grid.n_t(); ++j)
            r.nijenhuis_field.set(i, j, nijenhuis_apply(geo.jet(i, j), sf.psi1_theta.at(i, j), sf.psi2_theta.at(i, j)));
    r.dbar_field = dbar_j(geo).s_comp;
    r.d_xi_field = linearized_dbar(geo, sf.xi).s_comp;
    r.d_psi1_field = linearized_dbar(geo, sf.psi1_theta).s_comp;
    r.d_psi2_field = linearized_dbar(geo, sf.psi2_theta).s_comp;
    r.nijenhuis = r.nijenhuis_field.max_norm();
    r.dbar = r.dbar_field.max_norm();
    r.d_xi = r.d_xi_field.max_norm();
    r.d_psi1 = r.d_psi1_field.max_norm();
    r.d_psi2 = r.d_psi2_field.max_norm();
    return r;
}

namespace {

// ds sec + J dt sec + (sec . dJ) dt phi, the local first-order system
VecField local_cr_operator(const MapGeometry& geo, const VecField& sec) {
    const int d = geo.chart.dim();
    VecField dss = deriv(geo.grid, sec, Direction::S);
    VecField dts = deriv(geo.grid, sec, Direction::T);
    VecField out(d, geo.grid);
    for (int i = 0; i < geo.grid.n_s(); ++i)
        for (int j = 0; j < geo.grid.n_t(); ++j) {
            const ChartJet& jt = geo.jet(i, j);
            Eigen::VectorXcd v = dss.at(i, j) + jt.J.cast<Complex>() * dts.at(i, j);
            Eigen::VectorXcd sv = sec.at(i, j), pt = geo.phi_t.at(i, j);
            for (int a = 0; a < d; ++a) {
                Complex acc = 0;
                for (int l = 0; l < d; ++l)
                    for (int k = 0; k < d; ++k) acc += sv[l] * jt.dJ(l, a, k) * pt[k];
                v[a] += acc;
            }
            out.set(i, j, v);
        }
    return out;
}

}  // namespace

HoloLocalResiduals holo_local_residuals(const MapGeometry& geo, const SuperField& sf) {
    HoloLocalResiduals r;
    const int d = geo.chart.dim();

    r.holo_field = VecField(d, geo.grid);
    for (int i = 0; i < geo.grid.n_s(); ++i)
        for (int j = 0; j < geo.grid.n_t(); ++j)
            r.holo_field.set(i, j, geo.phi_s.at(i, j) + geo.jet(i, j).J.cast<Complex>() * geo.phi_t.at(i, j));

    r.cond10_psi1 = residual_10(geo, sf.psi1_theta);
    r.cond10_psi2 = residual_10(geo, sf.psi2_theta);

    // eta1 eta2 coefficient of psi^l psi^k d_l J^i_k
    r.contraction_field = VecField(d, geo.grid);
    for (int i = 0; i < geo.grid.n_s(); ++i)
        for (int j = 0; j < geo.grid.n_t(); ++j) {
            const ChartJet& jt = geo.jet(i, j);
            Eigen::VectorXcd p1 = sf.psi1_theta.at(i, j), p2 = sf.psi2_theta.at(i, j);
            Eigen::VectorXcd v = Eigen::VectorXcd::Zero(d);
            for (int a = 0; a < d; ++a) {
                Complex acc = 0;
                for (int l = 0; l < d; ++l)
                    for (int k = 0; k < d; ++k) acc += (p1[l] * p2[k] - p2[l] * p1[k]) * jt.dJ(l, a, k);
                v[a] = acc;
            }
            r.contraction_field.set(i, j, v);
        }

    r.psi1_field = local_cr_operator(geo, sf.psi1_theta);
    r.psi2_field = local_cr_operator(geo, sf.psi2_theta);
    r.xi_field = local_cr_operator(geo, sf.xi);

    r.holo = r.holo_field.max_norm();
    r.cond10 = std::max(r.cond10_psi1.max_norm(), r.cond10_psi2.max_norm());
    r.contraction = r.contraction_field.max_norm();
    r.psi1 = r.psi1_field.max_norm();
    r.psi2 = r.psi2_field.max_norm();
    r.xi = r.xi_field.max_norm();
    return r;
}

VecField theta_to_eplus(const VecField& psi_theta, const SpinFrame& fr) {
    VecField out = psi_theta;
    for (auto& f : out.c) f.array() *= fr.lam_neg_quarter.array().cast<Complex>();
    return out;
}

VecField eplus_to_theta(const VecField& psi_eplus, const SpinFrame& fr) {
    VecField out = psi_eplus;
    for (auto& f : out.c) f.array() *= fr.lam_quarter.array().cast<Complex>();
    return out;
}

}  // namespace supercurve
