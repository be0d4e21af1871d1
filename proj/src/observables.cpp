#include "wigner/observables.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wigner {

namespace {

template <typename Weight>
std::vector<double> row_integral(const WignerField& field, Quadrature rule, Weight weight) {
    const auto& g = field.grid;
    const auto w = quadrature_weights(g.n_p(), rule);
    std::vector<double> kernel(g.n_p());
    for (int j = 0; j < g.n_p(); ++j) kernel[j] = w[j] * weight(g.p(j)) * g.dp();
    std::vector<double> out(g.n_x());
    for (int i = 0; i < g.n_x(); ++i) {
        const auto row = field.row(i);
        double s = 0.0;
        for (int j = 0; j < g.n_p(); ++j) s += kernel[j] * row[j];
        out[i] = s;
    }
    return out;
}

}  // namespace

std::vector<double> density(const WignerField& field, Quadrature rule) {
    return row_integral(field, rule, [](double) { return 1.0; });
}

std::vector<double> current(const WignerField& field, Quadrature rule) {
    return row_integral(field, rule, [](double p) { return p; });
}

std::vector<double> energy_density(const WignerField& field, Quadrature rule) {
    return row_integral(field, rule, [](double p) { return 0.5 * p * p; });
}

MomentRecord moments(const WignerField& field, Quadrature rule) {
    const auto& g = field.grid;
    const int nx = g.n_x();
    const int np = g.n_p();
    const auto wx = quadrature_weights(nx, rule);
    const auto wp = quadrature_weights(np, rule);
    const double cell = g.dx() * g.dp();

    // Pass 1: zeroth and first moments.
    double m0 = 0.0, mx = 0.0, mp = 0.0, mpp = 0.0;
    for (int i = 0; i < nx; ++i) {
        const auto row = field.row(i);
        double s0 = 0.0, s1 = 0.0, s2 = 0.0;
        for (int j = 0; j < np; ++j) {
            const double f = wp[j] * row[j];
            const double p = g.p(j);
            s0 += f;
            s1 += p * f;
            s2 += p * p * f;
        }
        m0 += wx[i] * s0;
        mx += wx[i] * g.x(i) * s0;
        mp += wx[i] * s1;
        mpp += wx[i] * s2;
    }

    MomentRecord r;
    r.t = field.time;
    r.norm = m0 * cell;
    r.energy = 0.5 * mpp * cell;
    if (m0 == 0.0) return r;
    r.x_avg = mx / m0;
    r.p_avg = mp / m0;

    // Pass 2: central moments about the means.
    double cxx = 0.0, cpp = 0.0, cxp = 0.0;
    for (int i = 0; i < nx; ++i) {
        const auto row = field.row(i);
        const double dx = g.x(i) - r.x_avg;
        double s0 = 0.0, s1 = 0.0, s2 = 0.0;
        for (int j = 0; j < np; ++j) {
            const double f = wp[j] * row[j];
            const double dp = g.p(j) - r.p_avg;
            s0 += f;
            s1 += dp * f;
            s2 += dp * dp * f;
        }
        cxx += wx[i] * dx * dx * s0;
        cxp += wx[i] * dx * s1;
        cpp += wx[i] * s2;
    }
    r.sigma20 = cxx / m0;
    r.sigma02 = cpp / m0;
    r.sigma11 = cxp / m0;
    return r;
}

double max_abs(const WignerField& field) {
    double m = 0.0;
    for (double v : field.values) m = std::max(m, std::abs(v));
    return m;
}

Transmission transmission(double p_avg_final, double p0) {
    if (!(p0 > 0)) throw std::invalid_argument("transmission needs a positive initial momentum");
    Transmission t;
    t.raw = 0.5 * (1.0 + p_avg_final / p0);
    t.value = std::clamp(t.raw, 0.0, 1.0);
    t.clamped = t.value != t.raw;
    return t;
}

double jump_metric(std::span<const double> n, const PhaseSpaceGrid& grid, double window) {
    if (!(window > 0)) throw std::invalid_argument("jump window must be positive");
    if (n.size() != static_cast<std::size_t>(grid.n_x()))
        throw std::invalid_argument("density length does not match the grid");
    double peak = 0.0;
    for (double v : n) peak = std::max(peak, std::abs(v));
    if (peak == 0.0) return 0.0;
    double slope = 0.0;
    for (int i = 0; i + 1 < grid.n_x(); ++i) {
        if (std::abs(grid.x(i)) > window) continue;
        slope = std::max(slope, std::abs(n[i + 1] - n[i]) / grid.dx());
    }
    return slope / peak;
}

double boundary_mass(std::span<const double> n, const PhaseSpaceGrid& grid, int cells) {
    const int nx = grid.n_x();
    cells = std::min(cells, nx / 2);
    double m = 0.0;
    for (int i = 0; i < cells; ++i) m += std::abs(n[i]) + std::abs(n[nx - 1 - i]);
    return m * grid.dx();
}

}  // namespace wigner
