#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "supercurve/worldsheet.hpp"

using namespace supercurve;

namespace {

ScalarField trig_field(const TorusGrid& g, int ks, int kt) {
    ScalarField f(g.n_s(), g.n_t());
    for (int i = 0; i < g.n_s(); ++i)
        for (int j = 0; j < g.n_t(); ++j) {
            double phase = 2 * M_PI * (ks * i * g.h_s() / g.P_s() + kt * j * g.h_t() / g.P_t());
            f(i, j) = std::sin(phase) + 0.5 * std::cos(2 * phase);
        }
    return f;
}

double deriv_error(int n, DerivScheme scheme) {
    TorusGrid g(n, n, 1.5, 1.0, scheme);
    ScalarField f = trig_field(g, 1, 2);
    ScalarField df = g.deriv(f, Direction::S);
    double worst = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double phase = 2 * M_PI * (1 * i * g.h_s() / g.P_s() + 2 * j * g.h_t() / g.P_t());
            double exact = (2 * M_PI / g.P_s()) * (std::cos(phase) - std::sin(2 * phase));
            worst = std::max(worst, std::abs(df(i, j).real() - exact));
        }
    return worst;
}

}  // namespace

TEST_CASE("derivative of constants vanishes") {
    TorusGrid g(16, 16, 1.0, 2.0, DerivScheme::Spectral);
    ScalarField f = ScalarField::Constant(16, 16, Complex(3.0, -1.0));
    CHECK(g.deriv(f, Direction::S).cwiseAbs().maxCoeff() < 1e-13);
    CHECK(g.deriv(f, Direction::Zbar).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("spectral derivative is exact on resolvable trig polynomials") {
    CHECK(deriv_error(32, DerivScheme::Spectral) < 1e-11);
}

TEST_CASE("finite difference orders") {
    auto order = [](DerivScheme s) {
        double e16 = deriv_error(16, s), e64 = deriv_error(64, s);
        return std::log2(e16 / e64) / 2.0;  // two refinement steps
    };
    CHECK(std::abs(order(DerivScheme::Central2) - 2.0) < 0.2);
    CHECK(std::abs(order(DerivScheme::Central4) - 4.0) < 0.3);
}

TEST_CASE("z and zbar derivatives combine s and t parts") {
    TorusGrid g(16, 16, 1.0, 1.0, DerivScheme::Spectral);
    ScalarField f = trig_field(g, 2, 1);
    ScalarField ds = g.deriv(f, Direction::S), dt = g.deriv(f, Direction::T);
    ScalarField dz = g.deriv(f, Direction::Z);
    CHECK((dz - 0.5 * (ds - Complex(0, 1) * dt)).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("integration") {
    TorusGrid g(32, 32, 1.0, 1.0, DerivScheme::Spectral);
    RealField one = RealField::Ones(32, 32);
    CHECK(g.integrate(one) == doctest::Approx(1.0).epsilon(1e-14));

    // sin^2 over one period integrates to Area/2 exactly on a uniform grid
    RealField s2(32, 32);
    for (int i = 0; i < 32; ++i)
        for (int j = 0; j < 32; ++j) s2(i, j) = std::pow(std::sin(2 * M_PI * i * g.h_s() / g.P_s()), 2);
    CHECK(std::abs(g.integrate(s2) - 0.5) < 1e-14);

    ConformalFactor lam = ConformalFactor::sinusoidal(g, 1.0, 0.5, 1, 1);
    CHECK(g.integrate_dvol(one, lam.lambda) == doctest::Approx(g.integrate(lam.lambda)).epsilon(1e-14));
}

TEST_CASE("discrete divergence theorem") {
    for (DerivScheme s : {DerivScheme::Spectral, DerivScheme::Central2, DerivScheme::Central4}) {
        TorusGrid g(24, 24, 2.0, 1.0, s);
        ScalarField f = trig_field(g, 2, 3);
        CHECK(std::abs(g.integrate(g.deriv(f, Direction::S))) < 1e-13);
        CHECK(std::abs(g.integrate(g.deriv(f, Direction::Zbar))) < 1e-13);
    }
}

TEST_CASE("clifford conventions") {
    auto rep = GammaConvention::clifford_check();
    CHECK(rep.pass);
    CHECK(rep.anticommutation_defect == 0.0);
    CHECK(rep.volume_defect == 0.0);

    // Gamma_{e1}^2 = -Id
    Eigen::Matrix2cd G1 = GammaConvention::gamma_e1();
    CHECK((G1 * G1 + Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("conformal factor validation") {
    TorusGrid g(16, 16, 1.0, 1.0, DerivScheme::Spectral);
    CHECK_THROWS(ConformalFactor::constant(g, -1.0));
    CHECK_THROWS(ConformalFactor::sinusoidal(g, 1.0, 1.5, 1, 0));
    ConformalFactor lam = ConformalFactor::sinusoidal(g, 1.0, 0.5, 1, 0);
    CHECK(lam.lambda.minCoeff() > 0);
    CHECK((lam.power(0.25).array() - lam.lambda.array().pow(0.25)).abs().maxCoeff() == 0.0);
}

TEST_CASE("grid validation") {
    CHECK_THROWS(TorusGrid(7, 16, 1.0, 1.0, DerivScheme::Spectral));
    CHECK_THROWS(TorusGrid(18, 16, -1.0, 1.0, DerivScheme::Spectral));
    CHECK_THROWS(TorusGrid(17, 16, 1.0, 1.0, DerivScheme::Spectral));  // odd + spectral
}
