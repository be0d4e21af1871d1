#pragma once

#include <cmath>
#include <random>

#include "wigner/solver.hpp"

namespace testing {

// Small configuration that runs in well under a second.
inline wigner::SimulationConfig small_config() {
    wigner::SimulationConfig c;
    c.energy = 0.5;
    c.sigma0 = 0.25;
    c.x0 = -10.0;
    c.grid = {-40.0, 40.0, 256, -4.0, 4.0, 128};
    c.dt = 0.01;
    c.t_final = 1.0;
    c.snapshot_times = {0.5, 1.0};
    return c;
}

// Smooth, decaying, sign-changing field normalised to unit mass: a random
// sum of Gaussians in p at every x, under a Gaussian envelope in x.
inline wigner::WignerField random_smooth_field(const wigner::PhaseSpaceGrid& g, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> centre(-1.5, 1.5), width(0.25, 0.6), amp(-0.3, 1.0);
    wigner::WignerField f(g);
    for (int i = 0; i < g.n_x(); ++i) {
        const double env = std::exp(-0.5 * std::pow(g.x(i) / (0.15 * (g.x_max() - g.x_min())), 2));
        for (int term = 0; term < 3; ++term) {
            const double c = centre(rng), w = width(rng), a = amp(rng) + 0.4 * (term == 0);
            for (int j = 0; j < g.n_p(); ++j)
                f.at(i, j) += env * a * std::exp(-0.5 * std::pow((g.p(j) - c) / w, 2));
        }
    }
    double sum = 0.0;
    for (double v : f.values) sum += v;
    for (double& v : f.values) v /= sum * g.dx() * g.dp();
    return f;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
    return m;
}

}  // namespace testing
