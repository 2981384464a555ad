#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Core>
#include <Eigen/Dense>

namespace supercurve {

using Complex = std::complex<double>;
using ScalarField = Eigen::MatrixXcd;  // (n_s, n_t) grid samples
using RealField = Eigen::MatrixXd;

enum class DerivScheme { Spectral, Central2, Central4 };
enum class Direction { S, T, Z, Zbar };

std::string to_string(DerivScheme s);
DerivScheme scheme_from_string(const std::string& s);

// Flat genus-1 worldsheet C / (Z P_s + i Z P_t) sampled on a uniform periodic
// grid; holomorphic coordinate z = s + i t. Derivatives act as dense periodic
// differentiation matrices: row index = s, column index = t.
class TorusGrid {
public:
    TorusGrid(int n_s, int n_t, double P_s, double P_t, DerivScheme scheme);

    int n_s() const { return n_s_; }
    int n_t() const { return n_t_; }
    double P_s() const { return P_s_; }
    double P_t() const { return P_t_; }
    double h_s() const { return P_s_ / n_s_; }
    double h_t() const { return P_t_ / n_t_; }
    double area() const { return P_s_ * P_t_; }
    DerivScheme scheme() const { return scheme_; }

    RealField coord_s() const;
    RealField coord_t() const;

    ScalarField deriv(const ScalarField& f, Direction d) const;
    RealField deriv(const RealField& f, Direction d) const;  // S or T only

    // plain Riemann sum times h_s h_t (exact quadrature for periodic data)
    Complex integrate(const ScalarField& f) const { return f.sum() * h_s() * h_t(); }
    double integrate(const RealField& f) const { return f.sum() * h_s() * h_t(); }
    double integrate_dvol(const RealField& density, const RealField& lambda) const {
        return (density.array() * lambda.array()).sum() * h_s() * h_t();
    }
    Complex integrate_dvol(const ScalarField& density, const RealField& lambda) const {
        return (density.array() * lambda.array().cast<Complex>()).sum() * h_s() * h_t();
    }

private:
    int n_s_, n_t_;
    double P_s_, P_t_;
    DerivScheme scheme_;
    Eigen::MatrixXd D_s_, D_t_;
};

// Conformal factor lambda of the worldsheet metric h = lambda (ds^2 + dt^2).
struct ConformalFactor {
    RealField lambda;

    static ConformalFactor constant(const TorusGrid& g, double value);
    // lambda = base + amplitude * sin(2 pi (f_s s / P_s + f_t t / P_t))
    static ConformalFactor sinusoidal(const TorusGrid& g, double base, double amplitude, int freq_s, int freq_t);

    RealField power(double expo) const { return lambda.array().pow(expo).matrix(); }
    bool is_one() const { return (lambda.array() - 1.0).abs().maxCoeff() == 0.0; }
};

// Trivialized spinor frames on the torus: theta+- are global constant frames
// of S+-, e+ = lambda^{1/4} theta+, e- = lambda^{-1/4} theta-. Components
// convert as psi_{e+} = lambda^{-1/4} psi_+ and psi_{e-} = lambda^{1/4} psi_-.
struct SpinFrame {
    RealField lam_quarter;      // lambda^{1/4}
    RealField lam_neg_quarter;  // lambda^{-1/4}
    RealField lam_neg_half;     // lambda^{-1/2}

    explicit SpinFrame(const ConformalFactor& cf)
        : lam_quarter(cf.power(0.25)), lam_neg_quarter(cf.power(-0.25)), lam_neg_half(cf.power(-0.5)) {}
};

// Clifford conventions: the constant gamma matrices of the standard Cl_2
// representation on C^2 and their algebraic checks.
struct GammaConvention {
    static Eigen::Matrix2cd gamma_e1() {
        Eigen::Matrix2cd m;
        m << 0.0, -1.0, 1.0, 0.0;
        return m;
    }
    static Eigen::Matrix2cd gamma_e2() {
        Eigen::Matrix2cd m;
        m << Complex(0, 0), Complex(0, 1), Complex(0, 1), Complex(0, 0);
        return m;
    }

    struct CliffordReport {
        double anticommutation_defect;  // max over pairs of |G_a G_b + G_b G_a + 2 delta_ab|
        double volume_defect;           // |G1 G2 - diag(-i, i)|
        bool pass;
    };
    static CliffordReport clifford_check();
};

}  // namespace supercurve
