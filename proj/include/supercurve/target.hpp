#pragma once

#include <memory>
#include <string>

#include <Eigen/Core>
#include <Eigen/Dense>

#include "supercurve/tensors.hpp"

namespace supercurve {

// Pointwise data of an almost-complex chart (X, omega, J, g = omega(., J.))
// at a single target point. Index conventions:
//   J(i,k)        = J^i_k
//   dJ(l,i,k)     = d_l J^i_k
//   g(i,j), dg(l,i,j), d2g(l,m,i,j)
//   gamma(k,l,m)  = Gamma^k_{lm}
//   riem(p,q,i,j) = R^p_{q i j},  R(u,v) w = R^p_{q i j} u^i v^j w^q d_p
//   nabla_j(l,i,k) = (nabla_l J)^i_k
//   nijen(p,i,j)  = N^p_{ij},  N(u,v) = N^p_{ij} u^i v^j d_p
struct ChartJet {
    Eigen::MatrixXd J, g, g_inv, omega;
    Tensor3 dJ, dg, gamma, nabla_j, nijen, domega;
    Tensor4 d2g, riem;
    bool has_curvature = false;
};

enum class JetLevel { FirstOrder, Curvature };

class TargetChart {
public:
    virtual ~TargetChart() = default;

    int dim() const { return dim_; }
    virtual std::string kind() const = 0;
    // true if all tensors are constant over the chart (derivative terms vanish)
    virtual bool is_flat_constant() const { return false; }

    // Fill J, dJ, g, dg, d2g, omega, domega at x; derived fields are
    // completed by eval().
    virtual void eval_raw(const Eigen::VectorXd& x, ChartJet& jet) const = 0;

    void eval(const Eigen::VectorXd& x, JetLevel level, ChartJet& jet) const;
    ChartJet eval(const Eigen::VectorXd& x, JetLevel level = JetLevel::FirstOrder) const;

protected:
    explicit TargetChart(int dim) : dim_(dim) {}
    int dim_;
};

// g_{ij} = omega_{ik} J^k_j; validated symmetric positive definite.
Eigen::MatrixXd metric_from_omega_j(const Eigen::MatrixXd& omega, const Eigen::MatrixXd& J);

// Polar construction of an omega-compatible J from an SPD metric g' and the
// constant standard form: A defined by omega(u,v) = g'(Au, v), then
// J = A (-A^2)^{-1/2}. Also returns the induced compatible metric
// g = omega(., J .) = g'(., P .) with P = (-A^2)^{1/2}.
struct PolarResult {
    Eigen::MatrixXd J;
    Eigen::MatrixXd induced_metric;
};
PolarResult compatible_j_from_metric(const Eigen::MatrixXd& omega, const Eigen::MatrixXd& g_prime);

// Standard structures on R^{2n} with paired coordinate order
// (x^1, y^1, ..., x^n, y^n): J0 e_x = e_y, omega0(e_x, e_y) = 1.
Eigen::MatrixXd standard_j(int dim);
Eigen::MatrixXd standard_omega(int dim);

// Flat torus R^{2n} / lattice with the constant standard structures; the
// lattice enters only through map winding, not through the tensors.
class FlatTorusTarget final : public TargetChart {
public:
    explicit FlatTorusTarget(int dim, Eigen::VectorXd lattice = Eigen::VectorXd());
    std::string kind() const override { return "flat_torus"; }
    bool is_flat_constant() const override { return true; }
    void eval_raw(const Eigen::VectorXd& x, ChartJet& jet) const override;
    const Eigen::VectorXd& lattice() const { return lattice_; }

private:
    Eigen::VectorXd lattice_;
};

// S^2 in a single stereographic chart: constant standard J, conformal metric
// 4 delta / (1 + |x|^2)^2, omega = rho dx ^ dy. Fields used with this chart
// stay in a bounded disk; curvature is +1.
class SphereChartTarget final : public TargetChart {
public:
    SphereChartTarget() : TargetChart(2) {}
    std::string kind() const override { return "sphere"; }
    void eval_raw(const Eigen::VectorXd& x, ChartJet& jet) const override;
};

// R^4 with the constant standard omega and a genuinely non-integrable
// compatible J(x) = T(x) J0 T(x)^{-1}, where T(x) is a symplectic shear
// built from a symmetric 2x2 trigonometric block of amplitude eps_j. The
// induced metric g = omega(., J .) is curved for nonconstant shear, and the
// polar construction recovers J from it exactly.
class PerturbedR4Target final : public TargetChart {
public:
    explicit PerturbedR4Target(double eps_j) : TargetChart(4), eps_(eps_j) {}
    std::string kind() const override { return "perturbed_r4"; }
    void eval_raw(const Eigen::VectorXd& x, ChartJet& jet) const override;
    double eps_j() const { return eps_; }

private:
    double eps_;
};

struct TargetSpec {
    std::string kind = "flat_torus";
    int dim = 2;
    double eps_j = 0.1;
    Eigen::VectorXd lattice;  // empty = unit
};
std::unique_ptr<TargetChart> make_target(const TargetSpec& spec);

// N(u, v) from the local tensor, complex-bilinear extension.
Eigen::VectorXcd nijenhuis_apply(const ChartJet& jet, const Eigen::VectorXcd& u, const Eigen::VectorXcd& v);
// R(u, v) w with complex-multilinear extension.
Eigen::VectorXcd curvature_apply(const ChartJet& jet, const Eigen::VectorXcd& u, const Eigen::VectorXcd& v,
                                 const Eigen::VectorXcd& w);

}  // namespace supercurve
