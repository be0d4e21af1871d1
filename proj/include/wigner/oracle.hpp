#pragma once

// Independent references used to validate the Wigner solver.

#include <complex>
#include <span>
#include <vector>

#include "wigner/grid.hpp"
#include "wigner/observables.hpp"
#include "wigner/solver.hpp"

namespace wigner::oracle {

using Wavefunction = std::vector<cplx>;

struct WavefunctionSample {
    double t = 0.0;
    Wavefunction psi;
};

/// psi(x, 0) = (2 sigma0^2 / (pi hbar^2))^(1/4)
///             * exp(-sigma0^2 (x - x0)^2 / hbar^2 + i p0 (x - x0) / hbar)
/// sampled on the x lattice of `config`.
Wavefunction initial_wavefunction(const SimulationConfig& config);

/**
 * Split-operator propagation of i hbar psi_t = -(hbar^2/2) psi_xx + V psi on the
 * periodic x lattice of `config`, using the same dt and the same
 * half-kinetic / potential / half-kinetic ordering as the Wigner solver.
 * Returns psi at every requested time (each a whole number of steps).
 * Coherent kernels only; throws std::invalid_argument otherwise.
 */
std::vector<WavefunctionSample> schrodinger_run(const SimulationConfig& config,
                                                std::span<const double> sample_times);

double wavefunction_norm(const Wavefunction& psi, double dx);

/**
 * Discrete Wigner-Weyl transform on `grid`. The correlations
 *   rho(x_i + eta_k / 2, x_i - eta_k / 2) = psi(x_i + eta_k / 2) conj(psi(x_i - eta_k / 2))
 * are formed on the grid's own eta lattice, with psi evaluated off the x
 * lattice by exact spectral shifts on the periodic domain, and each row is
 * taken to momentum space with the grid's momentum transform. The momentum
 * marginal of the result is therefore exactly |psi(x_i)|^2.
 * Throws NonRealField ("non-real transform") if the correlations are not
 * Hermitian in eta to 1e-8 of their peak.
 */
WignerField wigner_transform(const Wavefunction& psi, const PhaseSpaceGrid& grid);

/// Same transform from precomputed correlation rows: `rows[i][k]` holds
/// rho(x_i + eta_k / 2, x_i - eta_k / 2) in the grid's eta ordering. Exposed
/// so the Hermitian-symmetry check can be exercised directly.
WignerField wigner_transform_correlations(const std::vector<std::vector<cplx>>& rows,
                                          const PhaseSpaceGrid& grid);

/**
 * Closed-form moments with V = 0. With D = 2 hbar^2 lambda2 / tau and
 * a = hbar lambda1 / tau:
 *   <p> = p0 + a t,  <x> = x0 + p0 t + a t^2 / 2,  sigma02 = s02 + D t,
 *   sigma11 = s11 + s02 t + D t^2 / 2,
 *   sigma20 = s20 + 2 s11 t + s02 t^2 + D t^3 / 3,
 * from the analytic initial moments (s20, s02, s11) = (hbar^2 / (4 sigma0^2), sigma0^2, 0).
 * Throws std::invalid_argument for a non-flat potential and
 * NonDifferentiableKernel for the exponential kernel.
 */
MomentRecord flat_potential_moments(const SimulationConfig& config, double t);

/// The Gaussian solving the flat-potential Wigner-Fokker-Planck problem at time
/// t, sampled on the config grid (unit mass, analytic normalisation).
WignerField diffusing_gaussian(const SimulationConfig& config, double t);

}  // namespace wigner::oracle
