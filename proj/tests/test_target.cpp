#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "supercurve/randomfields.hpp"
#include "supercurve/target.hpp"

using namespace supercurve;

namespace {

Eigen::VectorXd sample_point(FieldRng& rng, int dim, double scale = 0.8) {
    Eigen::VectorXd x(dim);
    for (int i = 0; i < dim; ++i) x[i] = scale * rng.normal();
    return x;
}

// finite-difference jet of J for oracle tests
Eigen::MatrixXd fd_dj(const TargetChart& t, const Eigen::VectorXd& x, int l, double h = 1e-6) {
    Eigen::VectorXd xp = x, xm = x;
    xp[l] += h;
    xm[l] -= h;
    return (t.eval(xp).J - t.eval(xm).J) / (2 * h);
}

}  // namespace

TEST_CASE("standard structures and metric_from_omega_j") {
    Eigen::MatrixXd J = standard_j(2), Om = standard_omega(2);
    CHECK((metric_from_omega_j(Om, J) - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() == 0.0);
    CHECK((J * J + Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("all builtin targets satisfy the chart invariants") {
    FieldRng rng(2);
    std::vector<std::unique_ptr<TargetChart>> targets;
    targets.push_back(std::make_unique<FlatTorusTarget>(4));
    targets.push_back(std::make_unique<SphereChartTarget>());
    targets.push_back(std::make_unique<PerturbedR4Target>(0.3));
    for (const auto& t : targets) {
        for (int s = 0; s < 20; ++s) {
            Eigen::VectorXd x = sample_point(rng, t->dim());
            ChartJet jet = t->eval(x, JetLevel::Curvature);
            const int d = t->dim();
            // J^2 = -Id
            CHECK((jet.J * jet.J + Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff() < 1e-12);
            // omega skew, g = omega J symmetric SPD
            CHECK((jet.omega + jet.omega.transpose()).cwiseAbs().maxCoeff() < 1e-12);
            CHECK((jet.g - jet.omega * jet.J).cwiseAbs().maxCoeff() < 1e-12);
            CHECK((jet.g - jet.g.transpose()).cwiseAbs().maxCoeff() < 1e-12);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jet.g);
            CHECK(es.eigenvalues().minCoeff() > 0);
            // Gamma symmetric in the lower indices
            for (int k = 0; k < d; ++k)
                for (int l = 0; l < d; ++l)
                    for (int m = 0; m < d; ++m) CHECK(std::abs(jet.gamma(k, l, m) - jet.gamma(k, m, l)) < 1e-12);
            // metric compatibility nabla g = 0 with analytic jets
            for (int l = 0; l < d; ++l)
                for (int i = 0; i < d; ++i)
                    for (int j = 0; j < d; ++j) {
                        double v = jet.dg(l, i, j);
                        for (int k = 0; k < d; ++k)
                            v -= jet.gamma(k, l, i) * jet.g(k, j) + jet.gamma(k, l, j) * jet.g(i, k);
                        CHECK(std::abs(v) < 1e-8);
                    }
        }
    }
}

TEST_CASE("flat torus is flat and has zero nijenhuis") {
    FlatTorusTarget flat(4);
    ChartJet jet = flat.eval(Eigen::VectorXd::Zero(4), JetLevel::Curvature);
    double r = 0, n = 0, c = 0;
    for (int p = 0; p < 4; ++p)
        for (int q = 0; q < 4; ++q)
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) r = std::max(r, std::abs(jet.riem(p, q, i, j)));
    for (int p = 0; p < 4; ++p)
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                n = std::max(n, std::abs(jet.nijen(p, i, j)));
                c = std::max(c, std::abs(jet.gamma(p, i, j)));
            }
    CHECK(r == 0.0);
    CHECK(n == 0.0);
    CHECK(c == 0.0);
}

TEST_CASE("sphere chart christoffel closed form") {
    SphereChartTarget sphere;
    Eigen::VectorXd x(2);
    x << 1.0, 0.0;
    ChartJet jet = sphere.eval(x);
    // Gamma^k_{ij} = -2 (d_ik x_j + d_jk x_i - d_ij x_k) / (1 + |x|^2)
    auto oracle = [&](int k, int i, int j) {
        double u = 1.0 + x.squaredNorm();
        return -2.0 * ((k == i ? x[j] : 0.0) + (k == j ? x[i] : 0.0) - (i == j ? x[k] : 0.0)) / u;
    };
    CHECK(jet.gamma(0, 0, 0) == doctest::Approx(-1.0).epsilon(1e-12));
    for (int k = 0; k < 2; ++k)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) CHECK(jet.gamma(k, i, j) == doctest::Approx(oracle(k, i, j)).epsilon(1e-10));
}

TEST_CASE("sphere has sectional curvature one") {
    SphereChartTarget sphere;
    FieldRng rng(4);
    for (int s = 0; s < 10; ++s) {
        Eigen::VectorXd x = sample_point(rng, 2, 1.0);
        ChartJet jet = sphere.eval(x, JetLevel::Curvature);
        Eigen::VectorXcd u = Eigen::VectorXcd::Zero(2), v = Eigen::VectorXcd::Zero(2);
        u[0] = 1;
        v[1] = 1;
        Eigen::VectorXcd rv = curvature_apply(jet, u, v, v);
        double num = (jet.g.cast<Complex>() * rv).dot(u.conjugate()).real();
        // K = <R(u,v)v, u> / (|u|^2 |v|^2 - <u,v>^2)
        double den = jet.g(0, 0) * jet.g(1, 1) - jet.g(0, 1) * jet.g(0, 1);
        CHECK(num / den == doctest::Approx(1.0).epsilon(1e-7));
    }
}

TEST_CASE("curvature antisymmetry and flatness of constant-J charts") {
    PerturbedR4Target pert(0.4);
    FieldRng rng(9);
    for (int s = 0; s < 5; ++s) {
        Eigen::VectorXd x = sample_point(rng, 4);
        ChartJet jet = pert.eval(x, JetLevel::Curvature);
        Eigen::VectorXcd u(4), v(4), w(4);
        for (int k = 0; k < 4; ++k) {
            u[k] = rng.normal();
            v[k] = rng.normal();
            w[k] = rng.normal();
        }
        CHECK((curvature_apply(jet, u, v, w) + curvature_apply(jet, v, u, w)).cwiseAbs().maxCoeff() < 1e-10);
    }
    // perturbed target is genuinely curved
    Eigen::VectorXd x0 = Eigen::VectorXd::Constant(4, 0.3);
    ChartJet jet = pert.eval(x0, JetLevel::Curvature);
    double rmax = 0;
    for (int p = 0; p < 4; ++p)
        for (int q = 0; q < 4; ++q)
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) rmax = std::max(rmax, std::abs(jet.riem(p, q, i, j)));
    CHECK(rmax > 1e-3);
}

TEST_CASE("analytic dJ and dg agree with finite differences") {
    PerturbedR4Target pert(0.35);
    SphereChartTarget sphere;
    FieldRng rng(12);
    for (int s = 0; s < 5; ++s) {
        Eigen::VectorXd x = sample_point(rng, 4);
        ChartJet jet = pert.eval(x);
        for (int l = 0; l < 4; ++l) CHECK((jet.dJ.slice(l) - fd_dj(pert, x, l)).cwiseAbs().maxCoeff() < 1e-8);
        Eigen::VectorXd y = sample_point(rng, 2);
        ChartJet js = sphere.eval(y);
        Eigen::VectorXd yp = y, ym = y;
        yp[0] += 1e-6;
        ym[0] -= 1e-6;
        Eigen::MatrixXd fd_dg = (sphere.eval(yp).g - sphere.eval(ym).g) / 2e-6;
        CHECK((js.dg.slice(0) - fd_dg).cwiseAbs().maxCoeff() < 1e-7);
    }
}

TEST_CASE("nijenhuis tensor") {
    PerturbedR4Target pert(0.3);
    FieldRng rng(7);

    // constant J: zero
    FlatTorusTarget flat(4);
    ChartJet fj = flat.eval(Eigen::VectorXd::Zero(4));
    Eigen::VectorXcd u(4), v(4);
    for (int k = 0; k < 4; ++k) {
        u[k] = rng.cnormal();
        v[k] = rng.cnormal();
    }
    CHECK(nijenhuis_apply(fj, u, v).cwiseAbs().maxCoeff() == 0.0);

    for (int s = 0; s < 5; ++s) {
        Eigen::VectorXd x = sample_point(rng, 4);
        ChartJet jet = pert.eval(x);
        for (int k = 0; k < 4; ++k) {
            u[k] = rng.cnormal();
            v[k] = rng.cnormal();
        }
        // skew-symmetry
        CHECK((nijenhuis_apply(jet, u, v) + nijenhuis_apply(jet, v, u)).cwiseAbs().maxCoeff() < 1e-12);
        // complex antilinearity: N(Ju, v) = -J N(u, v)
        Eigen::MatrixXcd J = jet.J.cast<Complex>();
        CHECK((nijenhuis_apply(jet, J * u, v) + J * nijenhuis_apply(jet, u, v)).cwiseAbs().maxCoeff() < 1e-10);

        // bracket definition via finite differences of the J field:
        // N(u,v) = [Ju, Jv] - J[Ju, v] - J[u, Jv] - [u, v] with constant u, v
        Eigen::VectorXd ur = u.real(), vr = v.real();
        const double h = 1e-5;
        auto lie_JuJv = [&](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
            // [Ja, Jb] at x: d(Jb)[Ja] - d(Ja)[Jb]
            Eigen::VectorXd Ja = jet.J * a, Jb = jet.J * b;
            Eigen::VectorXd out = Eigen::VectorXd::Zero(4);
            for (int l = 0; l < 4; ++l) {
                Eigen::VectorXd el = Eigen::VectorXd::Zero(4);
                el[l] = h;
                Eigen::MatrixXd Jp = pert.eval(x + el).J, Jm = pert.eval(x - el).J;
                out += (Jp * b - Jm * b) / (2 * h) * Ja[l] - (Jp * a - Jm * a) / (2 * h) * Jb[l];
            }
            return out;
        };
        auto lie_Jab = [&](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
            // [Ja, b] with b constant: -d(Ja)[b]
            Eigen::VectorXd out = Eigen::VectorXd::Zero(4);
            for (int l = 0; l < 4; ++l) {
                Eigen::VectorXd el = Eigen::VectorXd::Zero(4);
                el[l] = h;
                Eigen::MatrixXd Jp = pert.eval(x + el).J, Jm = pert.eval(x - el).J;
                out -= (Jp * a - Jm * a) / (2 * h) * b[l];
            }
            return out;
        };
        Eigen::VectorXd bracket = lie_JuJv(ur, vr) - jet.J * lie_Jab(ur, vr) + jet.J * lie_Jab(vr, ur);
        Eigen::VectorXcd coord = nijenhuis_apply(jet, ur.cast<Complex>(), vr.cast<Complex>());
        CHECK((coord.real() - bracket).cwiseAbs().maxCoeff() < 1e-6);
        CHECK(coord.cwiseAbs().maxCoeff() > 1e-3);  // genuinely non-integrable
    }
}

TEST_CASE("compatibility identity of the covariant derivative of J") {
    // nabla_{Ju} J = (nabla_u J) J for a compatible triple; this is what makes
    // the two forms of the linearized operator agree
    PerturbedR4Target pert(0.3);
    FieldRng rng(21);
    for (int s = 0; s < 5; ++s) {
        Eigen::VectorXd x = sample_point(rng, 4);
        ChartJet jet = pert.eval(x);
        Eigen::VectorXd u = sample_point(rng, 4, 1.0);
        Eigen::MatrixXd nJu = Eigen::MatrixXd::Zero(4, 4), nJJu = Eigen::MatrixXd::Zero(4, 4);
        Eigen::VectorXd Ju = jet.J * u;
        for (int l = 0; l < 4; ++l) {
            nJu += u[l] * jet.nabla_j.slice(l);
            nJJu += Ju[l] * jet.nabla_j.slice(l);
        }
        CHECK((nJJu - nJu * jet.J).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("polar construction") {
    // identity metric gives the standard J
    Eigen::MatrixXd Om = standard_omega(4);
    PolarResult pr = compatible_j_from_metric(Om, Eigen::MatrixXd::Identity(4, 4));
    CHECK((pr.J - standard_j(4)).cwiseAbs().maxCoeff() < 1e-12);

    FieldRng rng(8);
    for (int s = 0; s < 10; ++s) {
        // random SPD g'
        Eigen::MatrixXd Araw(4, 4);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) Araw(i, j) = rng.normal() * 0.3;
        Eigen::MatrixXd gp = Eigen::MatrixXd::Identity(4, 4) + Araw.transpose() * Araw;
        PolarResult r = compatible_j_from_metric(Om, gp);
        CHECK((r.J * r.J + Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-10);
        // omega(J., J.) = omega
        CHECK((r.J.transpose() * Om * r.J - Om).cwiseAbs().maxCoeff() < 1e-10);
        // induced metric SPD symmetric
        CHECK((r.induced_metric - r.induced_metric.transpose()).cwiseAbs().maxCoeff() < 1e-10);
    }

    // fixed point: feeding the compatible metric of the perturbed target
    // returns its J, and the induced metric is the input
    PerturbedR4Target pert(0.4);
    for (int s = 0; s < 5; ++s) {
        Eigen::VectorXd x = sample_point(rng, 4);
        ChartJet jet = pert.eval(x);
        PolarResult r = compatible_j_from_metric(jet.omega, jet.g);
        CHECK((r.J - jet.J).cwiseAbs().maxCoeff() < 1e-10);
        CHECK((r.induced_metric - jet.g).cwiseAbs().maxCoeff() < 1e-10);
    }

    CHECK_THROWS_AS(compatible_j_from_metric(Om, -Eigen::MatrixXd::Identity(4, 4)), std::domain_error);
}

TEST_CASE("make_target dispatch") {
    TargetSpec spec;
    spec.kind = "sphere";
    CHECK(make_target(spec)->dim() == 2);
    spec.kind = "perturbed_r4";
    CHECK(make_target(spec)->dim() == 4);
    spec.kind = "nonsense";
    CHECK_THROWS_AS(make_target(spec), std::invalid_argument);
}
