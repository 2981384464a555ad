#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "supercurve/grassmann.hpp"
#include "supercurve/io.hpp"
#include "supercurve/randomfields.hpp"

using namespace supercurve;

namespace {
GrassmannElement random_element(FieldRng& rng, int n, bool odd_only = false, bool even_only = false) {
    GrassmannElement e(n);
    for (unsigned m = 0; m < unsigned(1 << n); ++m) {
        int p = grassmann_detail::popcount(m) % 2;
        if (odd_only && p == 0) continue;
        if (even_only && p == 1) continue;
        e.coeff(m) = rng.cnormal();
    }
    return e;
}
}  // namespace

TEST_CASE("wedge product basics") {
    GrassmannElement e1 = GrassmannElement::generator(2, 0);
    GrassmannElement e2 = GrassmannElement::generator(2, 1);

    GrassmannElement p = e1 * e2;
    CHECK(p.coeff(0b11) == Complex(1, 0));
    CHECK(p.coeff(0b01) == Complex(0, 0));

    CHECK((e1 * e1).max_abs() == 0.0);
    CHECK((e2 * e1).coeff(0b11) == Complex(-1, 0));

    // (1 + 2 e1e2)(3 + e1e2) = 3 + 7 e1e2
    GrassmannElement a = GrassmannElement::scalar(2, 1.0) + GrassmannElement::monomial(2, 0b11, 2.0);
    GrassmannElement b = GrassmannElement::scalar(2, 3.0) + GrassmannElement::monomial(2, 0b11, 1.0);
    GrassmannElement ab = a * b;
    CHECK(ab.coeff(0) == Complex(3, 0));
    CHECK(ab.coeff(0b11) == Complex(7, 0));
}

TEST_CASE("coefficient extraction") {
    GrassmannElement a = GrassmannElement::scalar(2, 3.0) + GrassmannElement::monomial(2, 0b11, 7.0);
    CHECK(a.coeff(0b11) == Complex(7, 0));
    CHECK(a.body() == Complex(3, 0));
    CHECK(GrassmannElement::generator(2, 0).coeff(0b11) == Complex(0, 0));
}

TEST_CASE("parity") {
    CHECK(GrassmannElement::scalar(2, 1.0).parity() == Parity::Even);
    CHECK(GrassmannElement::generator(2, 0).parity() == Parity::Odd);
    GrassmannElement mixed = GrassmannElement::scalar(2, 1.0) + GrassmannElement::generator(2, 1);
    CHECK(mixed.parity() == Parity::Mixed);

    FieldRng rng(11);
    for (int i = 0; i < 100; ++i) {
        GrassmannElement a = random_element(rng, 4, true), b = random_element(rng, 4, true);
        CHECK((a * b).parity() == Parity::Even);
    }
}

TEST_CASE("algebra laws on random elements") {
    FieldRng rng(5);
    double worst = 0;
    for (int i = 0; i < 500; ++i) {
        int n = (i % 2) ? 2 : 4;
        GrassmannElement a = random_element(rng, n), b = random_element(rng, n), c = random_element(rng, n);
        double scale = std::max(1.0, a.max_abs() * b.max_abs() * c.max_abs());
        worst = std::max(worst, ((a * b) * c - a * (b * c)).max_abs() / scale);

        GrassmannElement ho = random_element(rng, n, true), he = random_element(rng, n, false, true);
        worst = std::max(worst, (ho * he - he * ho).max_abs());
        GrassmannElement ho2 = random_element(rng, n, true);
        worst = std::max(worst, (ho * ho2 + ho2 * ho).max_abs());
        worst = std::max(worst, (ho * ho).max_abs());
    }
    CHECK(worst < 1e-13);
}

TEST_CASE("products of three odd monomials vanish with two generators") {
    GrassmannElement e1 = GrassmannElement::generator(2, 0), e2 = GrassmannElement::generator(2, 1);
    CHECK((e1 * e2 * e1).max_abs() == 0.0);
    CHECK((e2 * e1 * e2).max_abs() == 0.0);
}

TEST_CASE("berezin derivative") {
    GrassmannElement tptm = GrassmannElement::monomial(4, 0b0011);  // theta+ theta-
    GrassmannElement d = tptm.derivative(1).derivative(0);
    CHECK(d.body() == Complex(-1, 0));

    // left derivative sign: d/d_eta1 (theta+ eta1) = -theta+
    GrassmannElement m = GrassmannElement::monomial(4, 0b0101);
    CHECK(m.derivative(2).coeff(0b0001) == Complex(-1, 0));
}

TEST_CASE("bilinear extension") {
    auto dot = [](const Eigen::VectorXcd& v, const Eigen::VectorXcd& w) { return v.dot(w.conjugate()); };
    // complex-bilinear form sum v_i w_i
    auto form = [](const Eigen::VectorXcd& v, const Eigen::VectorXcd& w) -> Complex { return (v.array() * w.array()).sum(); };
    (void)dot;

    Eigen::VectorXcd v(2), w(2);
    v << Complex(1, 2), Complex(0, -1);
    w << Complex(3, 0), Complex(1, 1);

    GrassmannVector x{2, {{0b01, v}}};  // eta1 v
    GrassmannVector y{2, {{0b10, w}}};  // eta2 w
    GrassmannElement e = bilinear_extend(form, x, y);
    CHECK(std::abs(e.coeff(0b11) - form(v, w)) < 1e-15);
    CHECK(e.body() == Complex(0, 0));

    // restriction to bodies is the plain form
    GrassmannVector xb{2, {{0u, v}}}, yb{2, {{0u, w}}};
    CHECK(std::abs(bilinear_extend(form, xb, yb).body() - form(v, w)) < 1e-15);

    // (eta1)^2 = 0
    GrassmannVector y1{2, {{0b01, w}}};
    CHECK(bilinear_extend(form, x, y1).max_abs() == 0.0);
}

TEST_CASE("json round trip") {
    FieldRng rng(3);
    GrassmannElement e = random_element(rng, 4);
    GrassmannElement back = grassmann_from_json(grassmann_to_json(e), 4);
    CHECK((e - back).max_abs() < 1e-15);
}

TEST_CASE("mismatched generator sets rejected") {
    GrassmannElement a(2), b(4);
    CHECK_THROWS_AS(a * b, std::domain_error);
}
