#pragma once

#include <complex>
#include <limits>
#include <optional>
#include <string>

#include "wigner/grid.hpp"

namespace wigner {

/**
 * Correlation-damping factor Delta(eta) applied to the density matrix in the
 * relative coordinate. Every variant satisfies Delta(0) = 1 and
 * Delta(-eta) = conj(Delta(eta)).
 *
 *   Coherent     Delta = 1
 *   Sech         Delta = 1 / cosh(eta / lambda)
 *   Exponential  Delta = exp(-|eta| / lambda)
 *   Quadratic    Delta = 1 + i*lambda1*eta - lambda2*eta^2  for |eta| <= cutoff, else 0
 *
 * The quadratic cutoff defaults to the positive root of 1 - lambda2*eta^2,
 * which clamps the real part at zero.
 */
struct CorrelationKernel {
    enum class Kind { Coherent, Sech, Exponential, Quadratic };

    Kind kind = Kind::Coherent;
    double lambda = std::numeric_limits<double>::infinity();
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    double cutoff = std::numeric_limits<double>::infinity();

    static CorrelationKernel coherent();
    static CorrelationKernel sech(double lambda);
    static CorrelationKernel exponential(double lambda);
    /// A negative cutoff selects the default (root of the real part).
    static CorrelationKernel quadratic(double lambda1, double lambda2, double cutoff = -1.0);
    /// Quadratic with the same curvature as Sech(lambda): lambda2 = 1/(2 lambda^2).
    static CorrelationKernel quadratic_matching_sech(double lambda, double cutoff = -1.0);

    /// "coherent", "sech(4)", ...
    std::string label() const;
    std::string name() const;
};

std::complex<double> eval_delta(const CorrelationKernel& kernel, double eta);

struct LambdaCoefficients {
    double lambda1 = 0.0;
    double lambda2 = 0.0;
};

/// Taylor coefficients of Delta about eta = 0. Throws NonDifferentiableKernel
/// for the exponential variant.
LambdaCoefficients lambda_coeffs(const CorrelationKernel& kernel);

/// Momentum convolution with the Fourier transform of Delta, applied row by row
/// in correlation space. The field time stamp is kept.
WignerField convolve_with_kernel(const WignerField& field, const CorrelationKernel& kernel);

/// Non-empty when Delta drops below 1e-3 within a single eta step, i.e. the
/// lattice cannot resolve the damping.
std::optional<std::string> kernel_resolution_warning(const CorrelationKernel& kernel,
                                                     const PhaseSpaceGrid& grid);

}  // namespace wigner
