#include "wigner/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "wigner/errors.hpp"

namespace wigner {

PhaseSpaceGrid build_grid(double x_min, double x_max, int n_x, double p_min, double p_max,
                          int n_p, double hbar) {
    if (n_p % 2 != 0) throw std::invalid_argument("odd momentum count");
    if (n_x % 2 != 0) throw std::invalid_argument("odd position count");
    if (n_x < 8) throw std::invalid_argument("position count must be at least 8");
    if (n_p < 8) throw std::invalid_argument("momentum count must be at least 8");
    if (!(hbar > 0) || !std::isfinite(hbar)) throw std::invalid_argument("hbar must be positive");
    if (!(x_min < x_max) || !std::isfinite(x_min) || !std::isfinite(x_max))
        throw std::invalid_argument("degenerate position bounds");
    if (!(p_min < p_max) || !std::isfinite(p_min) || !std::isfinite(p_max))
        throw std::invalid_argument("degenerate momentum bounds");

    PhaseSpaceGrid g;
    g.x_min_ = x_min;
    g.x_max_ = x_max;
    g.p_min_ = p_min;
    g.p_max_ = p_max;
    g.n_x_ = n_x;
    g.n_p_ = n_p;
    g.hbar_ = hbar;
    g.dx_ = (x_max - x_min) / n_x;
    g.dp_ = (p_max - p_min) / n_p;
    g.deta_ = 2.0 * std::numbers::pi * hbar / (n_p * g.dp_);
    return g;
}

bool WignerField::all_finite() const noexcept {
    return std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); });
}

MomentumTransform::MomentumTransform(const PhaseSpaceGrid& grid)
    : grid_(grid),
      phase_(grid.n_p()),
      buf_in_(grid.n_p()),
      buf_out_(grid.n_p()) {
    const int n = grid.n_p();
    const double theta = grid.deta() * grid.p_min() / grid.hbar();
    for (int k = 0; k < n; ++k) phase_[k] = std::polar(1.0, (k - n / 2) * theta);
    fwd_ = fft::plan_c2c(n, buf_in_.data(), buf_out_.data(), FFTW_BACKWARD);
    bwd_ = fft::plan_c2c(n, buf_in_.data(), buf_out_.data(), FFTW_FORWARD);
}

void MomentumTransform::forward(std::span<const double> row, std::span<cplx> out) {
    const int n = grid_.n_p();
    if (row.size() != static_cast<std::size_t>(n) || out.size() != row.size())
        throw std::invalid_argument("momentum row has wrong length");
    // exp(2 pi i (k - n/2) j / n) = (-1)^j exp(2 pi i k j / n)
    for (int j = 0; j < n; ++j) buf_in_[j] = (j % 2 == 0) ? row[j] : -row[j];
    fwd_.execute();
    const double dp = grid_.dp();
    for (int k = 0; k < n; ++k) out[k] = dp * phase_[k] * buf_out_[k];
}

void MomentumTransform::inverse(std::span<const cplx> g, std::span<double> out) {
    const int n = grid_.n_p();
    if (g.size() != static_cast<std::size_t>(n) || out.size() != g.size())
        throw std::invalid_argument("correlation row has wrong length");
    for (int k = 0; k < n; ++k) buf_in_[k] = g[k] * std::conj(phase_[k]);
    bwd_.execute();
    const double scale = 1.0 / (n * grid_.dp());
    double max_modulus = 0.0;
    double max_imag = 0.0;
    for (int j = 0; j < n; ++j) {
        const cplx v = ((j % 2 == 0) ? scale : -scale) * buf_out_[j];
        max_modulus = std::max(max_modulus, std::abs(v));
        max_imag = std::max(max_imag, std::abs(v.imag()));
        out[j] = v.real();
    }
    if (max_imag > kNonRealTolerance * max_modulus) {
        throw NonRealField("non-real field: imaginary residue " + std::to_string(max_imag) +
                           " against modulus " + std::to_string(max_modulus));
    }
}

std::vector<cplx> MomentumTransform::forward(std::span<const double> row) {
    std::vector<cplx> out(row.size());
    forward(row, out);
    return out;
}

std::vector<double> MomentumTransform::inverse(std::span<const cplx> g) {
    std::vector<double> out(g.size());
    inverse(g, out);
    return out;
}

std::vector<cplx> p_to_eta(const PhaseSpaceGrid& grid, std::span<const double> row) {
    MomentumTransform t(grid);
    return t.forward(row);
}

std::vector<double> eta_to_p(const PhaseSpaceGrid& grid, std::span<const cplx> g) {
    MomentumTransform t(grid);
    return t.inverse(g);
}

std::vector<double> quadrature_weights(int n, Quadrature rule) {
    if (n <= 0) throw std::invalid_argument("quadrature needs at least one node");
    std::vector<double> w(n, 1.0);
    if (rule == Quadrature::Rectangle) return w;
    if (n < 6) throw std::invalid_argument("open Newton-Cotes rule needs at least 6 nodes");
    const double end[3] = {55.0 / 24.0, -1.0 / 6.0, 11.0 / 8.0};
    for (int k = 0; k < 3; ++k) {
        w[k] = end[k];
        w[n - 1 - k] = end[k];
    }
    return w;
}

}  // namespace wigner
