#pragma once

#include "supercurve/fields.hpp"
#include "supercurve/grassmann.hpp"
#include "supercurve/superspace.hpp"

namespace supercurve {

// Global sign and measure conventions, fixed once by the flat-target
// analytic calibration and frozen for every identity check.
//
//   * Orientation: dz ^ dzbar = -2i ds ^ dt, so the superspace 2-form
//     -i dz ^ dzbar integrates as -2 ds dt.
//   * Dirac term of the supersymmetric action: coefficient -1 on
//     int dvol B(psi, Dslash psi). The i of the naive -i coefficient is
//     carried by the measure identification dz ^ dzbar = -2i ds dt that
//     relates the superspace and component routes; with honest measures on
//     both sides the calibrated coefficient is real.
//   * Spinor curvature term of the fourth Euler-Lagrange equation:
//     coefficient +4 on R(psi1_{e+}, psi2_{e+}) dphi[e_zbar], fixed by the
//     finite-difference pairing test below.
struct Conventions {
    static constexpr Complex dz_wedge_dzbar_to_dsdt{0.0, -2.0};
    static constexpr double dirac_term_coeff = -1.0;
    static constexpr double el4_psi_coeff = 4.0;
};

// Even Grassmann number with only the unit and eta1 eta2 monomials: the value
// type of the supersymmetric action.
struct GrassmannAction {
    double body = 0.0;
    Complex soul{0.0, 0.0};

    GrassmannAction operator+(const GrassmannAction& o) const { return {body + o.body, soul + o.soul}; }
    GrassmannAction operator-(const GrassmannAction& o) const { return {body - o.body, soul - o.soul}; }
    GrassmannAction operator*(double a) const { return {a * body, a * soul}; }
};

// ---- classical functionals ----

// (1/2) int |dphi|^2 dvol = (1/2) int (|phi_s|^2 + |phi_t|^2)_g ds dt
double harmonic_action(const MapGeometry& geo);
// int omega_{ij}(phi) phi_s^i phi_t^j ds dt
double pullback_omega_integral(const MapGeometry& geo);
// int |dbar_J phi|^2 dvol = 2 int |(dbar_J phi)_s|^2_g ds dt
double dbar_energy(const MapGeometry& geo);

struct ClassicalIdentityReport {
    double energy, omega_term, dbar_term;
    double defect, rel_defect;
};
ClassicalIdentityReport verify_classical_identity(const MapGeometry& geo);

// ---- spinor pairings (pointwise fields) ----

// B(a, b) = g(a_{e+}, b_{e-}) + g(a_{e-}, b_{e+}), complex bilinear
ScalarField b_pairing_field(const MapGeometry& geo, const Spinor2Field& a, const Spinor2Field& b);
// Hermitian bundle pairing: Re[g(conj a_{e+}, b_{e+}) + g(conj a_{e-}, b_{e-})]
RealField h_pairing_field(const MapGeometry& geo, const Spinor2Field& a, const Spinor2Field& b);

// ---- actions ----

// A1(phi, psi1, psi2, xi): body = harmonic action; soul = -int dvol <xi, tau>
// plus the calibrated Dirac term assembled through the Grassmann-extended
// B-pairing of psi = eta1 psi1 + eta2 psi2.
GrassmannAction susy_action(const MapGeometry& geo, const SuperField& sf, const ConformalFactor& lam);

// Dirac-harmonic action on a full spinor: int dvol (|dphi|^2 + (psi, Dslash psi))
double dirac_harmonic_action(const MapGeometry& geo, const Spinor2Field& psi, const ConformalFactor& lam);

// ---- superspace route ----

// Berezin density d/dtheta+ d/dtheta- g_Phi(dPhi(D+), dPhi(D-)) as a
// Grassmann field over eta1, eta2.
GrassmannField super_lagrangian_density(const MapGeometry& geo, const SuperField& sf);
// int L(Phi): the -i dz^dzbar integral of the density above
GrassmannAction super_lagrangian_integral(const MapGeometry& geo, const SuperField& sf);
// int L_dbar and int L_omega of the pointwise decomposition L = L_dbar + L_omega
GrassmannAction super_lagrangian_dbar_integral(const MapGeometry& geo, const SuperField& sf);
GrassmannAction super_lagrangian_omega_integral(const MapGeometry& geo, const SuperField& sf);

struct LagrangianDecomposition {
    GrassmannAction total, dbar_part, omega_part;
    double pointwise_defect;  // max norm of density(L) - density(L_dbar) - density(L_omega)
};
LagrangianDecomposition lagrangian_decompose(const MapGeometry& geo, const SuperField& sf);

// the hand-expanded density phi0(g_ij) dz phi0^i dzbar phi0^j - <psi_+, nabla_zbar psi_+>,
// computed without the Grassmann engine; equals minus the Berezin density
void hand_density(const MapGeometry& geo, const SuperField& sf, ScalarField& body, ScalarField& soul);

struct SuperIdentityReport {
    GrassmannAction total;       // int L
    double omega_term;           // int phi^* omega
    GrassmannAction dbar_term;   // int L_dbar
    double defect_body, defect_soul;
    double rel_defect;
};
SuperIdentityReport verify_super_identity(const MapGeometry& geo, const SuperField& sf);

// ---- Euler-Lagrange residuals ----

struct ElResiduals {
    VecField tau_field, psi1_field, psi2_field, xi_field;
    double tau, psi1, psi2, xi;
    double max() const { return std::max({tau, psi1, psi2, xi}); }
};
// requires a geometry built at JetLevel::Curvature
ElResiduals el_residuals(const MapGeometry& geo, const SuperField& sf, const ConformalFactor& lam);

// ---- variational checks ----

enum class Functional { Harmonic, Susy, DiracHarmonic };

struct Variation {
    VecField zeta;          // phi-direction (real data)
    VecField gamma1, gamma2;  // psi-directions
    VecField chi;           // xi-direction
};

// central difference (F(Phi + eps V) - F(Phi - eps V)) / (2 eps)
GrassmannAction directional_derivative(const TorusGrid& grid, const TargetChart& chart, const ConformalFactor& lam,
                                       const SuperField& sf, const Variation& v, Functional f, double eps,
                                       bool* cancellation_warning = nullptr);

// first variation via the Euler-Lagrange pairing; exact for flat targets at
// any field configuration, and at critical points in general
GrassmannAction el_pairing(const MapGeometry& geo, const SuperField& sf, const ConformalFactor& lam,
                           const Variation& v);

struct CompareA1A2Report {
    double a1_condition_norm;    // |nabla_zbar psi_{1+}|
    double a2_condition_norm;    // |nabla_zbar psi_{1e+}|
    double equivalence_defect;   // |nabla_zbar psi_{1+} - lambda^{1/4} nabla_zbar psi_{1e+}|
    double product_rule_defect;  // defect of the displayed product-rule relation
};
CompareA1A2Report compare_a1_a2(const MapGeometry& geo, const VecField& psi1_theta, const ConformalFactor& lam);

}  // namespace supercurve
