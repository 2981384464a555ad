#include "supercurve/target.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace supercurve {

void TargetChart::eval(const Eigen::VectorXd& x, JetLevel level, ChartJet& jet) const {
    const int d = dim_;
    eval_raw(x, jet);
    jet.g_inv = jet.g.inverse();

    // Levi-Civita symbols from the metric jet
    jet.gamma = Tensor3(d, d, d);
    for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l)
            for (int m = 0; m < d; ++m) {
                double acc = 0;
                for (int a = 0; a < d; ++a)
                    acc += jet.g_inv(k, a) * (jet.dg(l, m, a) + jet.dg(m, l, a) - jet.dg(a, l, m));
                jet.gamma(k, l, m) = 0.5 * acc;
            }

    // (nabla_l J)^i_k = d_l J^i_k + Gamma^i_{lm} J^m_k - Gamma^m_{lk} J^i_m
    jet.nabla_j = Tensor3(d, d, d);
    for (int l = 0; l < d; ++l)
        for (int i = 0; i < d; ++i)
            for (int k = 0; k < d; ++k) {
                double acc = jet.dJ(l, i, k);
                for (int m = 0; m < d; ++m)
                    acc += jet.gamma(i, l, m) * jet.J(m, k) - jet.gamma(m, l, k) * jet.J(i, m);
                jet.nabla_j(l, i, k) = acc;
            }

    // N^p_{ij} = J^k_i d_k J^p_j - J^m_j d_m J^p_i + J^p_k d_j J^k_i - J^p_m d_i J^m_j
    jet.nijen = Tensor3(d, d, d);
    for (int p = 0; p < d; ++p)
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                double acc = 0;
                for (int k = 0; k < d; ++k) {
                    acc += jet.J(k, i) * jet.dJ(k, p, j);
                    acc -= jet.J(k, j) * jet.dJ(k, p, i);
                    acc += jet.J(p, k) * jet.dJ(j, k, i);
                    acc -= jet.J(p, k) * jet.dJ(i, k, j);
                }
                jet.nijen(p, i, j) = acc;
            }

    jet.has_curvature = false;
    if (level == JetLevel::Curvature) {
        // d_a Gamma^k_{lm} needs d(g^{-1}) = -g^{-1} dg g^{-1} and d2g
        Tensor3 dginv(d, d, d);
        for (int a = 0; a < d; ++a) {
            Eigen::MatrixXd da = -jet.g_inv * jet.dg.slice(a) * jet.g_inv;
            dginv.set_slice(a, da);
        }
        Tensor4 dgamma(d, d, d, d);  // (a, k, l, m)
        for (int a = 0; a < d; ++a)
            for (int k = 0; k < d; ++k)
                for (int l = 0; l < d; ++l)
                    for (int m = 0; m < d; ++m) {
                        double acc = 0;
                        for (int b = 0; b < d; ++b) {
                            acc += dginv(a, k, b) * (jet.dg(l, m, b) + jet.dg(m, l, b) - jet.dg(b, l, m));
                            acc += jet.g_inv(k, b) * (jet.d2g(a, l, m, b) + jet.d2g(a, m, l, b) - jet.d2g(a, b, l, m));
                        }
                        dgamma(a, k, l, m) = 0.5 * acc;
                    }

        // R^p_{q i j} = d_i Gamma^p_{jq} - d_j Gamma^p_{iq}
        //              + Gamma^p_{il} Gamma^l_{jq} - Gamma^p_{jl} Gamma^l_{iq}
        jet.riem = Tensor4(d, d, d, d);
        for (int p = 0; p < d; ++p)
            for (int q = 0; q < d; ++q)
                for (int i = 0; i < d; ++i)
                    for (int j = 0; j < d; ++j) {
                        double acc = dgamma(i, p, j, q) - dgamma(j, p, i, q);
                        for (int l = 0; l < d; ++l)
                            acc += jet.gamma(p, i, l) * jet.gamma(l, j, q) - jet.gamma(p, j, l) * jet.gamma(l, i, q);
                        jet.riem(p, q, i, j) = acc;
                    }
        jet.has_curvature = true;
    }
}

ChartJet TargetChart::eval(const Eigen::VectorXd& x, JetLevel level) const {
    ChartJet jet;
    eval(x, level, jet);
    return jet;
}

Eigen::MatrixXd metric_from_omega_j(const Eigen::MatrixXd& omega, const Eigen::MatrixXd& J) {
    Eigen::MatrixXd g = omega * J;
    double asym = (g - g.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-10 * std::max(1.0, g.cwiseAbs().maxCoeff()))
        throw std::domain_error("metric_from_omega_j: omega * J is not symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (g + g.transpose()));
    if (es.eigenvalues().minCoeff() <= 0.0)
        throw std::domain_error("metric_from_omega_j: induced metric is not positive definite");
    return g;
}

PolarResult compatible_j_from_metric(const Eigen::MatrixXd& omega, const Eigen::MatrixXd& g_prime) {
    const int d = int(omega.rows());
    // omega(u,v) = g'(Au, v)  =>  A^T G = Omega  =>  A = -G^{-1} Omega
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> esg(g_prime);
    if (esg.eigenvalues().minCoeff() <= 0.0) throw std::domain_error("compatible_j_from_metric: g' not SPD");
    Eigen::MatrixXd g_half = esg.operatorSqrt();
    Eigen::MatrixXd g_half_inv = esg.operatorInverseSqrt();

    Eigen::MatrixXd A = -g_prime.inverse() * omega;
    // K = G^{1/2} A G^{-1/2} is skew; J = G^{-1/2} K (K^T K)^{-1/2} G^{1/2}
    Eigen::MatrixXd K = g_half * A * g_half_inv;
    Eigen::MatrixXd M = K.transpose() * K;  // = -K^2, SPD when A invertible
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> esm(M);
    if (esm.eigenvalues().minCoeff() <= 1e-14) throw std::domain_error("compatible_j_from_metric: degenerate input");
    Eigen::MatrixXd JK = K * esm.operatorInverseSqrt();
    PolarResult out;
    out.J = g_half_inv * JK * g_half;
    out.induced_metric = metric_from_omega_j(omega, out.J);
    (void)d;
    return out;
}

Eigen::MatrixXd standard_j(int dim) {
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(dim, dim);
    for (int b = 0; b + 1 < dim; b += 2) {
        J(b, b + 1) = -1.0;
        J(b + 1, b) = 1.0;
    }
    return J;
}

Eigen::MatrixXd standard_omega(int dim) {
    Eigen::MatrixXd Om = Eigen::MatrixXd::Zero(dim, dim);
    for (int b = 0; b + 1 < dim; b += 2) {
        Om(b, b + 1) = 1.0;
        Om(b + 1, b) = -1.0;
    }
    return Om;
}

FlatTorusTarget::FlatTorusTarget(int dim, Eigen::VectorXd lattice) : TargetChart(dim), lattice_(std::move(lattice)) {
    if (dim % 2 || dim <= 0) throw std::invalid_argument("FlatTorusTarget: dim must be positive even");
    if (lattice_.size() == 0) lattice_ = Eigen::VectorXd::Ones(dim);
    if (lattice_.size() != dim) throw std::invalid_argument("FlatTorusTarget: lattice size mismatch");
}

void FlatTorusTarget::eval_raw(const Eigen::VectorXd&, ChartJet& jet) const {
    const int d = dim_;
    jet.J = standard_j(d);
    jet.omega = standard_omega(d);
    jet.g = Eigen::MatrixXd::Identity(d, d);
    jet.dJ = Tensor3(d, d, d);
    jet.dg = Tensor3(d, d, d);
    jet.domega = Tensor3(d, d, d);
    jet.d2g = Tensor4(d, d, d, d);
}

void SphereChartTarget::eval_raw(const Eigen::VectorXd& x, ChartJet& jet) const {
    const int d = 2;
    const double u = 1.0 + x.squaredNorm();
    const double rho = 4.0 / (u * u);
    jet.J = standard_j(d);
    jet.dJ = Tensor3(d, d, d);
    jet.g = rho * Eigen::MatrixXd::Identity(d, d);
    jet.omega = rho * standard_omega(d);

    Eigen::Vector2d drho;
    for (int l = 0; l < d; ++l) drho[l] = -16.0 * x[l] / (u * u * u);
    jet.dg = Tensor3(d, d, d);
    jet.domega = Tensor3(d, d, d);
    for (int l = 0; l < d; ++l) {
        jet.dg(l, 0, 0) = drho[l];
        jet.dg(l, 1, 1) = drho[l];
        jet.domega(l, 0, 1) = drho[l];
        jet.domega(l, 1, 0) = -drho[l];
    }
    jet.d2g = Tensor4(d, d, d, d);
    for (int l = 0; l < d; ++l)
        for (int m = 0; m < d; ++m) {
            double d2rho = -16.0 * ((l == m ? 1.0 : 0.0) / (u * u * u) - 6.0 * x[l] * x[m] / (u * u * u * u));
            jet.d2g(l, m, 0, 0) = d2rho;
            jet.d2g(l, m, 1, 1) = d2rho;
        }
}

namespace {

// Symmetric 2x2 shear block and its coordinate jets, as functions of the
// paired coordinates (x1, y1, x2, y2).
struct ShearJet {
    Eigen::Matrix2d B;
    Eigen::Matrix2d dB[4];
    Eigen::Matrix2d d2B[4][4];
};

ShearJet shear_jet(const Eigen::VectorXd& x) {
    const double x1 = x[0], y1 = x[1], x2 = x[2], y2 = x[3];
    // arguments and their (constant) gradients in (x1,y1,x2,y2)
    const double a1 = x1 + 2.0 * y1;
    const double a2 = x2 - y2;
    const double a3 = x1 - x2 + y2;
    const double g1[4] = {1.0, 2.0, 0.0, 0.0};
    const double g2[4] = {0.0, 0.0, 1.0, -1.0};
    const double g3[4] = {1.0, 0.0, -1.0, 1.0};

    ShearJet out;
    const double b1 = std::sin(a1), b2 = std::cos(a2), b3 = std::sin(a3);
    out.B << b1, b3, b3, b2;
    const double db1 = std::cos(a1), db2 = -std::sin(a2), db3 = std::cos(a3);
    for (int l = 0; l < 4; ++l) {
        Eigen::Matrix2d m;
        m << db1 * g1[l], db3 * g3[l], db3 * g3[l], db2 * g2[l];
        out.dB[l] = m;
    }
    const double dd1 = -std::sin(a1), dd2 = -std::cos(a2), dd3 = -std::sin(a3);
    for (int l = 0; l < 4; ++l)
        for (int m = 0; m < 4; ++m) {
            Eigen::Matrix2d h;
            h << dd1 * g1[l] * g1[m], dd3 * g3[l] * g3[m], dd3 * g3[l] * g3[m], dd2 * g2[l] * g2[m];
            out.d2B[l][m] = h;
        }
    return out;
}

// permutation split (x1,x2,y1,y2) -> paired (x1,y1,x2,y2)
Eigen::Matrix4d split_to_paired() {
    Eigen::Matrix4d P = Eigen::Matrix4d::Zero();
    const int perm[4] = {0, 2, 1, 3};
    for (int i = 0; i < 4; ++i) P(perm[i], i) = 1.0;
    return P;
}

Eigen::Matrix4d blocks_to_paired(const Eigen::Matrix2d& a, const Eigen::Matrix2d& b, const Eigen::Matrix2d& c,
                                 const Eigen::Matrix2d& d) {
    static const Eigen::Matrix4d P = split_to_paired();
    Eigen::Matrix4d M;
    M << a, b, c, d;
    return P * M * P.transpose();
}

}  // namespace

void PerturbedR4Target::eval_raw(const Eigen::VectorXd& x, ChartJet& jet) const {
    const int d = 4;
    ShearJet sh = shear_jet(x);
    const Eigen::Matrix2d I2 = Eigen::Matrix2d::Identity();
    const Eigen::Matrix2d Z2 = Eigen::Matrix2d::Zero();
    const Eigen::Matrix2d B = eps_ * sh.B;

    // J = T J0 T^{-1}, g = T^{-T} T^{-1} for the shear T = [[I, B], [0, I]]
    jet.J = blocks_to_paired(B, -(B * B + I2), I2, -B);
    jet.g = blocks_to_paired(I2, -B, -B, B * B + I2);
    jet.omega = standard_omega(d);

    jet.dJ = Tensor3(d, d, d);
    jet.dg = Tensor3(d, d, d);
    jet.domega = Tensor3(d, d, d);
    jet.d2g = Tensor4(d, d, d, d);
    for (int l = 0; l < d; ++l) {
        const Eigen::Matrix2d dB = eps_ * sh.dB[l];
        Eigen::Matrix4d dJ = blocks_to_paired(dB, -(dB * B + B * dB), Z2, -dB);
        Eigen::Matrix4d dg = blocks_to_paired(Z2, -dB, -dB, dB * B + B * dB);
        jet.dJ.set_slice(l, dJ);
        jet.dg.set_slice(l, dg);
        for (int m = 0; m < d; ++m) {
            const Eigen::Matrix2d dBm = eps_ * sh.dB[m];
            const Eigen::Matrix2d d2B = eps_ * sh.d2B[l][m];
            Eigen::Matrix4d d2g =
                blocks_to_paired(Z2, -d2B, -d2B, d2B * B + B * d2B + dB * dBm + dBm * dB);
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) jet.d2g(l, m, i, j) = d2g(i, j);
        }
    }
}

std::unique_ptr<TargetChart> make_target(const TargetSpec& spec) {
    if (spec.kind == "flat_torus") return std::make_unique<FlatTorusTarget>(spec.dim, spec.lattice);
    if (spec.kind == "sphere") return std::make_unique<SphereChartTarget>();
    if (spec.kind == "perturbed_r4") return std::make_unique<PerturbedR4Target>(spec.eps_j);
    throw std::invalid_argument("unknown target kind: " + spec.kind);
}

Eigen::VectorXcd nijenhuis_apply(const ChartJet& jet, const Eigen::VectorXcd& u, const Eigen::VectorXcd& v) {
    const int d = int(u.size());
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(d);
    for (int p = 0; p < d; ++p) {
        std::complex<double> acc = 0;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) acc += jet.nijen(p, i, j) * u[i] * v[j];
        out[p] = acc;
    }
    return out;
}

Eigen::VectorXcd curvature_apply(const ChartJet& jet, const Eigen::VectorXcd& u, const Eigen::VectorXcd& v,
                                 const Eigen::VectorXcd& w) {
    const int d = int(u.size());
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(d);
    for (int p = 0; p < d; ++p) {
        std::complex<double> acc = 0;
        for (int q = 0; q < d; ++q)
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) acc += jet.riem(p, q, i, j) * u[i] * v[j] * w[q];
        out[p] = acc;
    }
    return out;
}

}  // namespace supercurve
