#pragma once

#include <cstdint>
#include <random>

#include "supercurve/fields.hpp"

namespace supercurve {

// Deterministic generator with a platform-independent mapping from the
// (standardized) mt19937_64 stream to doubles.
class FieldRng {
public:
    explicit FieldRng(std::uint64_t seed) : eng_(seed) {}

    double uniform() { return double(eng_() >> 11) * 0x1.0p-53; }
    double normal() {
        double u1 = uniform(), u2 = uniform();
        if (u1 <= 0) u1 = 0x1.0p-53;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }
    Complex cnormal() { return Complex(normal(), normal()); }
    int uniform_int(int lo, int hi) {  // inclusive
        return lo + int(eng_() % std::uint64_t(hi - lo + 1));
    }

private:
    std::mt19937_64 eng_;
};

// Band-limited trigonometric polynomial with frequencies |k| <= k_max and
// smoothly decaying random coefficients.
ScalarField random_band_limited(const TorusGrid& g, FieldRng& rng, int k_max, double amplitude, bool real_valued);

VecField random_vec_field(const TorusGrid& g, FieldRng& rng, int dim, int k_max, double amplitude, bool real_valued);

// Random map into a target chart. Flat torus: random winding in {-1,0,1} per
// complex block plus a periodic part. Sphere chart: periodic part rescaled to
// stay inside |x| <= radius. Perturbed R4: plain periodic part.
MapField random_map(const TorusGrid& g, const TargetChart& chart, FieldRng& rng, int k_max, double amplitude,
                    bool with_winding = true, double sphere_radius = 2.5);

SuperField random_superfield(const TorusGrid& g, const TargetChart& chart, FieldRng& rng, int k_max,
                             double amplitude, bool with_winding = true);

}  // namespace supercurve
