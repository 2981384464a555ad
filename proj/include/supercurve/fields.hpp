#pragma once

#include <vector>

#include "supercurve/target.hpp"
#include "supercurve/worldsheet.hpp"

namespace supercurve {

// Target-vector-valued grid field (complexified components).
struct VecField {
    std::vector<ScalarField> c;

    VecField() = default;
    VecField(int dim, const TorusGrid& g) : c(dim, ScalarField::Zero(g.n_s(), g.n_t())) {}

    int dim() const { return int(c.size()); }
    Eigen::VectorXcd at(int i, int j) const {
        Eigen::VectorXcd v(dim());
        for (int k = 0; k < dim(); ++k) v[k] = c[k](i, j);
        return v;
    }
    void set(int i, int j, const Eigen::VectorXcd& v) {
        for (int k = 0; k < dim(); ++k) c[k](i, j) = v[k];
    }

    VecField operator+(const VecField& o) const {
        VecField r = *this;
        for (int k = 0; k < dim(); ++k) r.c[k] += o.c[k];
        return r;
    }
    VecField operator-(const VecField& o) const {
        VecField r = *this;
        for (int k = 0; k < dim(); ++k) r.c[k] -= o.c[k];
        return r;
    }
    VecField operator*(Complex a) const {
        VecField r = *this;
        for (auto& f : r.c) f *= a;
        return r;
    }
    VecField& operator+=(const VecField& o) {
        for (int k = 0; k < dim(); ++k) c[k] += o.c[k];
        return *this;
    }

    double max_norm() const {
        double m = 0;
        if (c.empty()) return 0;
        Eigen::ArrayXXd acc = Eigen::ArrayXXd::Zero(c[0].rows(), c[0].cols());
        for (const auto& f : c) acc += f.array().abs2();
        m = std::sqrt(acc.maxCoeff());
        return m;
    }
    double max_imag() const {
        double m = 0;
        for (const auto& f : c) m = std::max(m, f.imag().cwiseAbs().maxCoeff());
        return m;
    }
};

VecField deriv(const TorusGrid& g, const VecField& f, Direction d);

// Map into a target chart. Torus targets admit a linear winding part
// slope_s * s + slope_t * t with lattice-valued increments over the periods;
// derivatives of the winding part are exact constants, so coordinates never
// see the mod-lattice jump. Curved charts require zero winding.
struct MapField {
    VecField periodic;  // real data in complex storage
    Eigen::VectorXd slope_s, slope_t;

    static MapField zero(int dim, const TorusGrid& g) {
        MapField m;
        m.periodic = VecField(dim, g);
        m.slope_s = Eigen::VectorXd::Zero(dim);
        m.slope_t = Eigen::VectorXd::Zero(dim);
        return m;
    }

    int dim() const { return periodic.dim(); }
    bool has_winding() const { return slope_s.cwiseAbs().maxCoeff() > 0 || slope_t.cwiseAbs().maxCoeff() > 0; }

    Eigen::VectorXd value(const TorusGrid& g, int i, int j) const {
        Eigen::VectorXd v = slope_s * (i * g.h_s()) + slope_t * (j * g.h_t());
        for (int k = 0; k < dim(); ++k) v[k] += periodic.c[k](i, j).real();
        return v;
    }

    VecField d(const TorusGrid& g, Direction dir) const;
};

// Linear holomorphic map z -> a z per complex block of a flat-torus target,
// with a = (winding_re + i winding_im) integers against the unit lattice.
MapField linear_torus_map(const TorusGrid& g, int dim, const std::vector<std::pair<int, int>>& winding);

// S+ spinor-vector in the theta+ trivialization (primary storage). The
// e+ component is lambda^{-1/4} times this.
struct SpinorVectorField {
    VecField theta;
    bool satisfies_10 = false;
};

// Full spinor in e+- components, as used by the Dirac operator.
struct Spinor2Field {
    VecField e_plus, e_minus;
};

struct SuperField {
    MapField phi;
    VecField psi1_theta, psi2_theta, xi;
};

// Pointwise chart tensors and map derivatives cached along a map.
class MapGeometry {
public:
    MapGeometry(const TorusGrid& grid, const TargetChart& chart, const MapField& phi, JetLevel level);

    const TorusGrid& grid;
    const TargetChart& chart;
    const MapField& phi;
    VecField phi_s, phi_t, phi_z, phi_zbar;

    const ChartJet& jet(int i, int j) const { return jets_[constant_ ? 0 : size_t(i) * grid.n_t() + j]; }
    bool constant_tensors() const { return constant_; }

    // grid-field views of composed tensors (assembled on demand, cached)
    const ScalarField& metric_entry(int i, int j) const;
    const ScalarField& metric_deriv_entry(int l, int i, int j) const;
    const ScalarField& omega_entry(int i, int j) const;
    const ScalarField& omega_deriv_entry(int l, int i, int j) const;
    const ScalarField& j_entry(int i, int k) const;
    const ScalarField& j_deriv_entry(int l, int i, int k) const;

private:
    bool constant_;
    std::vector<ChartJet> jets_;
    mutable std::vector<ScalarField> g_fields_, dg_fields_, om_fields_, dom_fields_, j_fields_, dj_fields_;
    void build_tables() const;
    mutable bool tables_built_ = false;
};

struct OneFormVec {
    VecField s_comp, t_comp;
    double max_norm() const { return std::max(s_comp.max_norm(), t_comp.max_norm()); }
};

// dbar_J(phi) = (d phi + J d phi j) / 2; t-component = -J * s-component.
OneFormVec dbar_j(const MapGeometry& geo);
// partial_J(phi) = (d phi - J d phi j) / 2; t-component = +J * s-component.
OneFormVec partial_j(const MapGeometry& geo);

// pullback covariant derivative (nabla_a sec)^k = d_a sec^k + Gamma^k_{lm} d_a phi^l sec^m
VecField pullback_nabla(const MapGeometry& geo, const VecField& sec, Direction dir);

// tension field tau(phi) = (4/lambda)(dz dzbar phi^k + Gamma^k_{lm} dz phi^l dzbar phi^m)
VecField tension(const MapGeometry& geo, const ConformalFactor& lam);
// independent route: tau = lambda^{-1} (nabla_s dphi[s] + nabla_t dphi[t])
VecField tension_trace_form(const MapGeometry& geo, const ConformalFactor& lam);

// linearized dbar operator at phi (real-linear Cauchy-Riemann operator);
// acting on complexified sections it is the complex-linear extension.
OneFormVec linearized_dbar(const MapGeometry& geo, const VecField& sec);
// equivalent form through the J-preserving connection and the Nijenhuis tensor
OneFormVec linearized_dbar_compat(const MapGeometry& geo, const VecField& sec);

// twisted Dirac operator, e+- components: 2 lambda^{-1/2} (-nabla_z psi_{e-}, nabla_zbar psi_{e+})
Spinor2Field dirac(const MapGeometry& geo, const Spinor2Field& psi, const SpinFrame& frame);

// induced S+ section of a map and an S- spinor: psi_theta = zeta_minus * dphi[dz]
VecField induced_spinor(const MapGeometry& geo, const ScalarField& zeta_minus);

// pointwise (1,0) part: (v - i J v) / 2
VecField project_10(const MapGeometry& geo, const VecField& v);
// residual of the (1,0) condition: v + i J v
VecField residual_10(const MapGeometry& geo, const VecField& v);

struct SupercurveResiduals {
    VecField nijenhuis_field, dbar_field, d_xi_field, d_psi1_field, d_psi2_field;
    double nijenhuis, dbar, d_xi, d_psi1, d_psi2;
    double max() const { return std::max({nijenhuis, dbar, d_xi, d_psi1, d_psi2}); }
};
SupercurveResiduals supercurve_residuals(const MapGeometry& geo, const SuperField& sf);

struct HoloLocalResiduals {
    VecField holo_field;           // ds phi + J dt phi
    VecField cond10_psi1, cond10_psi2;
    VecField contraction_field;    // (psi1^l psi2^k - psi2^l psi1^k) d_l J^i_k
    VecField psi1_field, psi2_field, xi_field;
    double holo, cond10, contraction, psi1, psi2, xi;
    double max() const { return std::max({holo, cond10, contraction, psi1, psi2, xi}); }
};
HoloLocalResiduals holo_local_residuals(const MapGeometry& geo, const SuperField& sf);

// theta+ <-> e+ component conversions
VecField theta_to_eplus(const VecField& psi_theta, const SpinFrame& fr);
VecField eplus_to_theta(const VecField& psi_eplus, const SpinFrame& fr);

}  // namespace supercurve
