#pragma once

namespace wigner {

/// Gaussian barrier V(x) = exp(-x^2/a^2); energies are in units of its height.
struct Barrier {
    double a = 1.0;

    static Barrier gaussian(double width);
};

double eval_potential(const Barrier& barrier, double x);

/// Splitting symbol V(x + eta/2) - V(x - eta/2). Odd in eta, so the kick
/// step maps real fields to real fields.
double delta_v(const Barrier& barrier, double x, double eta);

}  // namespace wigner
