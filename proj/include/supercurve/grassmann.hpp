#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

namespace supercurve {

enum class Parity { Even, Odd, Mixed };

namespace grassmann_detail {

inline int popcount(unsigned m) {
    int c = 0;
    while (m) { c += m & 1u; m >>= 1; }
    return c;
}

// Sign of sorting the concatenation of two sorted generator subsets into
// canonical order; 0 if the subsets overlap (nilpotency).
inline int merge_sign(unsigned lhs, unsigned rhs) {
    if (lhs & rhs) return 0;
    int swaps = 0;
    for (unsigned b = 0; b < 8; ++b) {
        if ((rhs >> b) & 1u) swaps += popcount(lhs >> (b + 1));
    }
    return (swaps & 1) ? -1 : 1;
}

}  // namespace grassmann_detail

// Element of the complex Grassmann algebra on n_gens <= 4 generators, stored
// densely as 2^n coefficients indexed by generator-subset bitmask. Canonical
// generator order is fixed by bit position; for the 4-generator algebra used
// by the superspace machinery the order is theta+ < theta- < eta1 < eta2.
template <typename Scalar = std::complex<double>>
class GrassmannElementT {
public:
    GrassmannElementT() : n_(0) { c_.fill(Scalar(0)); }
    explicit GrassmannElementT(int n_gens) : n_(n_gens) {
        if (n_gens < 0 || n_gens > 4) throw std::invalid_argument("GrassmannElement: n_gens must be in [0,4]");
        c_.fill(Scalar(0));
    }

    static GrassmannElementT scalar(int n_gens, Scalar v) {
        GrassmannElementT e(n_gens);
        e.c_[0] = v;
        return e;
    }
    static GrassmannElementT monomial(int n_gens, unsigned mask, Scalar v = Scalar(1)) {
        GrassmannElementT e(n_gens);
        if (mask >= (1u << n_gens)) throw std::invalid_argument("GrassmannElement: mask out of range");
        e.c_[mask] = v;
        return e;
    }
    static GrassmannElementT generator(int n_gens, int idx) { return monomial(n_gens, 1u << idx); }

    int n_gens() const { return n_; }
    int n_coeffs() const { return 1 << n_; }

    Scalar coeff(unsigned mask) const { return c_[mask]; }
    Scalar& coeff(unsigned mask) { return c_[mask]; }
    Scalar body() const { return c_[0]; }

    Parity parity() const {
        bool has_even = false, has_odd = false;
        for (unsigned m = 0; m < (1u << n_); ++m) {
            if (c_[m] == Scalar(0)) continue;
            (grassmann_detail::popcount(m) % 2 ? has_odd : has_even) = true;
        }
        if (has_even && has_odd) return Parity::Mixed;
        return has_odd ? Parity::Odd : Parity::Even;
    }

    GrassmannElementT operator+(const GrassmannElementT& o) const {
        check_same(o);
        GrassmannElementT r(n_);
        for (int m = 0; m < n_coeffs(); ++m) r.c_[m] = c_[m] + o.c_[m];
        return r;
    }
    GrassmannElementT operator-(const GrassmannElementT& o) const {
        check_same(o);
        GrassmannElementT r(n_);
        for (int m = 0; m < n_coeffs(); ++m) r.c_[m] = c_[m] - o.c_[m];
        return r;
    }
    GrassmannElementT operator*(const GrassmannElementT& o) const {
        check_same(o);
        GrassmannElementT r(n_);
        for (int a = 0; a < n_coeffs(); ++a) {
            if (c_[a] == Scalar(0)) continue;
            for (int b = 0; b < o.n_coeffs(); ++b) {
                int s = grassmann_detail::merge_sign(unsigned(a), unsigned(b));
                if (s) r.c_[a | b] += Scalar(double(s)) * c_[a] * o.c_[b];
            }
        }
        return r;
    }
    GrassmannElementT operator*(Scalar v) const {
        GrassmannElementT r(n_);
        for (int m = 0; m < n_coeffs(); ++m) r.c_[m] = c_[m] * v;
        return r;
    }
    friend GrassmannElementT operator*(Scalar v, const GrassmannElementT& e) { return e * v; }

    // Left Berezin derivative with respect to one generator.
    GrassmannElementT derivative(int gen_idx) const {
        unsigned g = 1u << gen_idx;
        GrassmannElementT r(n_);
        for (unsigned m = 0; m < unsigned(n_coeffs()); ++m) {
            if (!(m & g)) continue;
            int below = grassmann_detail::popcount(m & (g - 1));
            r.c_[m ^ g] += (below & 1 ? Scalar(-1) : Scalar(1)) * c_[m];
        }
        return r;
    }

    double max_abs() const {
        double v = 0;
        for (int m = 0; m < n_coeffs(); ++m) v = std::max(v, std::abs(c_[m]));
        return v;
    }

private:
    void check_same(const GrassmannElementT& o) const {
        if (n_ != o.n_) throw std::domain_error("GrassmannElement: mismatched generator sets");
    }

    int n_;
    std::array<Scalar, 16> c_;
};

using GrassmannElement = GrassmannElementT<std::complex<double>>;

// A Grassmann combination of vectors in C^d: sum over subsets mask of
// mask-monomial times a coefficient vector.
struct GrassmannVector {
    int n_gens = 2;
    std::vector<std::pair<unsigned, Eigen::VectorXcd>> terms;
};

// Extension of a complex-bilinear form B on C^d to the Grassmann algebra:
// B(eta^I v, eta^J w) = eta^I eta^J B(v, w).
inline GrassmannElement bilinear_extend(
    const std::function<std::complex<double>(const Eigen::VectorXcd&, const Eigen::VectorXcd&)>& form,
    const GrassmannVector& x, const GrassmannVector& y) {
    if (x.n_gens != y.n_gens) throw std::domain_error("bilinear_extend: mismatched generator sets");
    GrassmannElement out(x.n_gens);
    for (const auto& [ma, va] : x.terms) {
        for (const auto& [mb, vb] : y.terms) {
            int s = grassmann_detail::merge_sign(ma, mb);
            if (s) out.coeff(ma | mb) += double(s) * form(va, vb);
        }
    }
    return out;
}

}  // namespace supercurve
