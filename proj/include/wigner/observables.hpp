#pragma once

#include <span>
#include <vector>

#include "wigner/grid.hpp"

namespace wigner {

/// One time sample of the phase-space averages. Averages and central moments
/// are normalised by `norm`; `energy` is the raw integral of p^2/2 f.
struct MomentRecord {
    double t = 0.0;
    double x_avg = 0.0;
    double p_avg = 0.0;
    double sigma20 = 0.0;
    double sigma02 = 0.0;
    double sigma11 = 0.0;
    double norm = 0.0;
    double energy = 0.0;
};

using MomentSeries = std::vector<MomentRecord>;

/// n(x_i) = dp * sum_j w_j f_ij
std::vector<double> density(const WignerField& field, Quadrature rule = Quadrature::Rectangle);
/// j(x_i) = dp * sum_j w_j p_j f_ij
std::vector<double> current(const WignerField& field, Quadrature rule = Quadrature::Rectangle);
/// e(x_i) = dp * sum_j w_j (p_j^2 / 2) f_ij
std::vector<double> energy_density(const WignerField& field,
                                   Quadrature rule = Quadrature::Rectangle);

/// Two-pass moments: means first, then central moments about them.
MomentRecord moments(const WignerField& field, Quadrature rule = Quadrature::Rectangle);

double max_abs(const WignerField& field);

struct Transmission {
    double value = 0.0;  ///< clamped to [0, 1]
    double raw = 0.0;    ///< (1 + p_final / p0) / 2 as computed
    bool clamped = false;
};

/// T = (1 + <p>_final / p0) / 2. Throws std::invalid_argument when p0 <= 0.
Transmission transmission(double p_avg_final, double p0);

/**
 * Sharpness of the density profile near the origin:
 * max over |x_i| <= window of |n_{i+1} - n_i| / dx, divided by max(n).
 * Returns 0 for a density that is identically zero.
 */
double jump_metric(std::span<const double> n, const PhaseSpaceGrid& grid, double window);

/// Fraction of |n| dx lying within `cells` lattice cells of either x boundary.
double boundary_mass(std::span<const double> n, const PhaseSpaceGrid& grid, int cells = 5);

}  // namespace wigner
