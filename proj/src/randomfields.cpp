#include "supercurve/randomfields.hpp"

#include <cmath>

namespace supercurve {

ScalarField random_band_limited(const TorusGrid& g, FieldRng& rng, int k_max, double amplitude, bool real_valued) {
    ScalarField f = ScalarField::Zero(g.n_s(), g.n_t());
    RealField s = g.coord_s(), t = g.coord_t();
    for (int a = -k_max; a <= k_max; ++a)
        for (int b = -k_max; b <= k_max; ++b) {
            Complex c = rng.cnormal() * (amplitude / (1.0 + a * a + b * b));
            Eigen::ArrayXXd phase = 2.0 * M_PI * (double(a) / g.P_s() * s.array() + double(b) / g.P_t() * t.array());
            f.array() += c * (phase.cos().cast<Complex>() + Complex(0, 1) * phase.sin().cast<Complex>());
        }
    if (real_valued) f = f.real().cast<Complex>();
    return f;
}

VecField random_vec_field(const TorusGrid& g, FieldRng& rng, int dim, int k_max, double amplitude, bool real_valued) {
    VecField v(dim, g);
    for (int k = 0; k < dim; ++k) v.c[k] = random_band_limited(g, rng, k_max, amplitude, real_valued);
    return v;
}

MapField random_map(const TorusGrid& g, const TargetChart& chart, FieldRng& rng, int k_max, double amplitude,
                    bool with_winding, double sphere_radius) {
    const int d = chart.dim();
    MapField m = MapField::zero(d, g);
    m.periodic = random_vec_field(g, rng, d, k_max, amplitude, true);

    if (chart.kind() == "flat_torus" && with_winding) {
        std::vector<std::pair<int, int>> w(d / 2);
        for (auto& p : w) p = {rng.uniform_int(-1, 1), rng.uniform_int(-1, 1)};
        MapField lin = linear_torus_map(g, d, w);
        m.slope_s = lin.slope_s;
        m.slope_t = lin.slope_t;
    }
    if (chart.kind() == "sphere") {
        // keep values inside the chart disk
        double max_r = 0;
        for (int i = 0; i < g.n_s(); ++i)
            for (int j = 0; j < g.n_t(); ++j) max_r = std::max(max_r, m.periodic.at(i, j).norm());
        if (max_r > sphere_radius)
            for (auto& f : m.periodic.c) f *= (sphere_radius / max_r);
    }
    return m;
}

SuperField random_superfield(const TorusGrid& g, const TargetChart& chart, FieldRng& rng, int k_max,
                             double amplitude, bool with_winding) {
    SuperField sf;
    sf.phi = random_map(g, chart, rng, k_max, amplitude, with_winding);
    sf.psi1_theta = random_vec_field(g, rng, chart.dim(), k_max, amplitude, false);
    sf.psi2_theta = random_vec_field(g, rng, chart.dim(), k_max, amplitude, false);
    sf.xi = random_vec_field(g, rng, chart.dim(), k_max, amplitude, false);
    return sf;
}

}  // namespace supercurve
