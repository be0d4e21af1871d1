#include "wigner/potential.hpp"

#include <cmath>
#include <stdexcept>

namespace wigner {

Barrier Barrier::gaussian(double width) {
    if (!(width > 0) || !std::isfinite(width))
        throw std::invalid_argument("barrier width must be positive");
    return Barrier{width};
}

double eval_potential(const Barrier& barrier, double x) {
    const double u = x / barrier.a;
    return std::exp(-u * u);
}

double delta_v(const Barrier& barrier, double x, double eta) {
    return eval_potential(barrier, x + 0.5 * eta) - eval_potential(barrier, x - 0.5 * eta);
}

}  // namespace wigner
