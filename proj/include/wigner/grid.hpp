#pragma once

#include <complex>
#include <span>
#include <vector>

#include "wigner/fft.hpp"

namespace wigner {

using cplx = std::complex<double>;

/**
 * Uniform phase-space lattice.
 *
 * Points are x_i = x_min + i*dx (i < n_x) and p_j = p_min + j*dp (j < n_p);
 * the upper bounds are excluded. The correlation variable conjugate to p
 * lives on eta_k = (k - n_p/2)*deta for k < n_p, with
 * deta*dp*n_p = 2*pi*hbar.
 */
class PhaseSpaceGrid {
public:
    double x_min() const noexcept { return x_min_; }
    double x_max() const noexcept { return x_max_; }
    double p_min() const noexcept { return p_min_; }
    double p_max() const noexcept { return p_max_; }
    int n_x() const noexcept { return n_x_; }
    int n_p() const noexcept { return n_p_; }
    double hbar() const noexcept { return hbar_; }

    double dx() const noexcept { return dx_; }
    double dp() const noexcept { return dp_; }
    double deta() const noexcept { return deta_; }

    double x(int i) const noexcept { return x_min_ + i * dx_; }
    double p(int j) const noexcept { return p_min_ + j * dp_; }
    /// Centred ordering: k = 0 maps to the most negative eta, k = n_p/2 to eta = 0.
    double eta(int k) const noexcept { return (k - n_p_ / 2) * deta_; }

    std::size_t size() const noexcept {
        return static_cast<std::size_t>(n_x_) * static_cast<std::size_t>(n_p_);
    }

    bool operator==(const PhaseSpaceGrid&) const = default;

    friend PhaseSpaceGrid build_grid(double, double, int, double, double, int, double);

private:
    double x_min_ = 0, x_max_ = 0, p_min_ = 0, p_max_ = 0;
    int n_x_ = 0, n_p_ = 0;
    double hbar_ = 1;
    double dx_ = 0, dp_ = 0, deta_ = 0;
};

/// Validates bounds and counts (even, >= 8) and derives the spacings.
/// Throws std::invalid_argument on bad input.
PhaseSpaceGrid build_grid(double x_min, double x_max, int n_x, double p_min, double p_max,
                          int n_p, double hbar);

/// Real distribution on a PhaseSpaceGrid, row-major with one row per x.
struct WignerField {
    PhaseSpaceGrid grid;
    std::vector<double> values;
    double time = 0.0;

    WignerField() = default;
    explicit WignerField(const PhaseSpaceGrid& g, double t = 0.0)
        : grid(g), values(g.size(), 0.0), time(t) {}

    double& at(int i, int j) noexcept {
        return values[static_cast<std::size_t>(i) * grid.n_p() + j];
    }
    double at(int i, int j) const noexcept {
        return values[static_cast<std::size_t>(i) * grid.n_p() + j];
    }
    std::span<double> row(int i) noexcept {
        return {values.data() + static_cast<std::size_t>(i) * grid.n_p(),
                static_cast<std::size_t>(grid.n_p())};
    }
    std::span<const double> row(int i) const noexcept {
        return {values.data() + static_cast<std::size_t>(i) * grid.n_p(),
                static_cast<std::size_t>(grid.n_p())};
    }

    bool all_finite() const noexcept;
};

/**
 * Transform pair between a momentum row f(p_j) and its correlation-space
 * image g(eta_k) = dp * sum_j f(p_j) exp(i eta_k p_j / hbar).
 *
 * With this sign and weight g(eta = 0) is the local density contribution.
 * One instance owns its FFT plan and scratch space, so it is cheap to reuse
 * across rows but not shareable between threads.
 */
class MomentumTransform {
public:
    explicit MomentumTransform(const PhaseSpaceGrid& grid);

    void forward(std::span<const double> row, std::span<cplx> out);
    /// Exact inverse. Throws NonRealField when the imaginary part of the
    /// result exceeds 1e-8 of its largest modulus.
    void inverse(std::span<const cplx> g, std::span<double> out);

    std::vector<cplx> forward(std::span<const double> row);
    std::vector<double> inverse(std::span<const cplx> g);

    static constexpr double kNonRealTolerance = 1e-8;

private:
    PhaseSpaceGrid grid_;
    std::vector<cplx> phase_;  // exp(i (k - n/2) deta p_min / hbar)
    fft::AlignedBuffer<cplx> buf_in_, buf_out_;
    fft::Plan fwd_, bwd_;
};

std::vector<cplx> p_to_eta(const PhaseSpaceGrid& grid, std::span<const double> row);
std::vector<double> eta_to_p(const PhaseSpaceGrid& grid, std::span<const cplx> g);

enum class Quadrature {
    Rectangle,        ///< equal weights; the default for every phase-space integral
    OpenNewtonCotes,  ///< fourth-order extended open rule, for comparison runs
};

/// Weights (in units of the lattice spacing) for n uniformly spaced nodes.
/// The open rule integrates over [first - h, last + h] and needs n >= 6.
std::vector<double> quadrature_weights(int n, Quadrature rule);

}  // namespace wigner
