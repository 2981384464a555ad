#include "supercurve/worldsheet.hpp"

#include <cmath>

namespace supercurve {

std::string to_string(DerivScheme s) {
    switch (s) {
        case DerivScheme::Spectral: return "spectral";
        case DerivScheme::Central2: return "central2";
        case DerivScheme::Central4: return "central4";
    }
    return "spectral";
}

DerivScheme scheme_from_string(const std::string& s) {
    if (s == "spectral") return DerivScheme::Spectral;
    if (s == "central2") return DerivScheme::Central2;
    if (s == "central4") return DerivScheme::Central4;
    throw std::invalid_argument("unknown derivative scheme: " + s);
}

namespace {

// Dense periodic differentiation matrix for n samples of an L-periodic
// function. Spectral: exact for trigonometric polynomials below Nyquist.
Eigen::MatrixXd diff_matrix(int n, double L, DerivScheme scheme) {
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(n, n);
    const double h = L / n;
    switch (scheme) {
        case DerivScheme::Spectral: {
            for (int j = 0; j < n; ++j) {
                for (int k = 0; k < n; ++k) {
                    if (j == k) continue;
                    int d = j - k;
                    double sgn = (d % 2 == 0) ? 1.0 : -1.0;
                    D(j, k) = (M_PI / L) * sgn / std::tan(M_PI * double(d) / double(n));
                }
            }
            break;
        }
        case DerivScheme::Central2: {
            for (int j = 0; j < n; ++j) {
                D(j, (j + 1) % n) += 1.0 / (2 * h);
                D(j, (j - 1 + n) % n) -= 1.0 / (2 * h);
            }
            break;
        }
        case DerivScheme::Central4: {
            for (int j = 0; j < n; ++j) {
                D(j, (j + 1) % n) += 8.0 / (12 * h);
                D(j, (j - 1 + n) % n) -= 8.0 / (12 * h);
                D(j, (j + 2) % n) -= 1.0 / (12 * h);
                D(j, (j - 2 + n) % n) += 1.0 / (12 * h);
            }
            break;
        }
    }
    return D;
}

}  // namespace

TorusGrid::TorusGrid(int n_s, int n_t, double P_s, double P_t, DerivScheme scheme)
    : n_s_(n_s), n_t_(n_t), P_s_(P_s), P_t_(P_t), scheme_(scheme) {
    if (P_s <= 0 || P_t <= 0) throw std::invalid_argument("TorusGrid: periods must be positive");
    if (n_s < 8 || n_t < 8) throw std::invalid_argument("TorusGrid: grid sizes must be >= 8");
    if (scheme == DerivScheme::Spectral && (n_s % 2 || n_t % 2))
        throw std::invalid_argument("TorusGrid: spectral scheme needs even grid sizes");
    D_s_ = diff_matrix(n_s, P_s, scheme);
    D_t_ = diff_matrix(n_t, P_t, scheme);
}

RealField TorusGrid::coord_s() const {
    RealField f(n_s_, n_t_);
    for (int i = 0; i < n_s_; ++i) f.row(i).setConstant(i * h_s());
    return f;
}

RealField TorusGrid::coord_t() const {
    RealField f(n_s_, n_t_);
    for (int j = 0; j < n_t_; ++j) f.col(j).setConstant(j * h_t());
    return f;
}

ScalarField TorusGrid::deriv(const ScalarField& f, Direction d) const {
    switch (d) {
        case Direction::S: return D_s_ * f;
        case Direction::T: return f * D_t_.transpose();
        case Direction::Z: return 0.5 * (D_s_ * f - Complex(0, 1) * (f * D_t_.transpose()));
        case Direction::Zbar: return 0.5 * (D_s_ * f + Complex(0, 1) * (f * D_t_.transpose()));
    }
    return f;
}

RealField TorusGrid::deriv(const RealField& f, Direction d) const {
    switch (d) {
        case Direction::S: return D_s_ * f;
        case Direction::T: return f * D_t_.transpose();
        default: throw std::invalid_argument("real deriv: use complex overload for z / zbar");
    }
}

ConformalFactor ConformalFactor::constant(const TorusGrid& g, double value) {
    if (value <= 0) throw std::invalid_argument("conformal factor must be positive");
    ConformalFactor cf;
    cf.lambda = RealField::Constant(g.n_s(), g.n_t(), value);
    return cf;
}

ConformalFactor ConformalFactor::sinusoidal(const TorusGrid& g, double base, double amplitude, int freq_s, int freq_t) {
    if (std::abs(amplitude) >= base) throw std::invalid_argument("conformal factor must stay positive");
    ConformalFactor cf;
    RealField phase = (2 * M_PI) * (double(freq_s) / g.P_s() * g.coord_s() + double(freq_t) / g.P_t() * g.coord_t());
    cf.lambda = base + amplitude * phase.array().sin().matrix().array();
    return cf;
}

GammaConvention::CliffordReport GammaConvention::clifford_check() {
    CliffordReport rep{};
    const Eigen::Matrix2cd G1 = gamma_e1(), G2 = gamma_e2(), I = Eigen::Matrix2cd::Identity();
    // Gamma_a Gamma_b + Gamma_b Gamma_a = -2 delta_ab Id
    double defect = 0.0;
    defect = std::max(defect, (2.0 * (G1 * G1) + 2.0 * I).cwiseAbs().maxCoeff());
    defect = std::max(defect, (2.0 * (G2 * G2) + 2.0 * I).cwiseAbs().maxCoeff());
    defect = std::max(defect, (G1 * G2 + G2 * G1).cwiseAbs().maxCoeff());
    rep.anticommutation_defect = defect;
    Eigen::Matrix2cd vol;
    vol << Complex(0, -1), 0, 0, Complex(0, 1);
    rep.volume_defect = (G1 * G2 - vol).cwiseAbs().maxCoeff();
    rep.pass = rep.anticommutation_defect < 1e-15 && rep.volume_defect < 1e-15;
    return rep;
}

}  // namespace supercurve
