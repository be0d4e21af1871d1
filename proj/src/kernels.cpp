#include "wigner/kernels.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "wigner/errors.hpp"

namespace wigner {

namespace {

void require_positive_lambda(double lambda) {
    if (!(lambda > 0) || std::isnan(lambda)) throw std::invalid_argument("lambda must be positive");
}

}  // namespace

CorrelationKernel CorrelationKernel::coherent() { return {}; }

CorrelationKernel CorrelationKernel::sech(double lambda) {
    require_positive_lambda(lambda);
    CorrelationKernel k;
    k.kind = Kind::Sech;
    k.lambda = lambda;
    return k;
}

CorrelationKernel CorrelationKernel::exponential(double lambda) {
    require_positive_lambda(lambda);
    CorrelationKernel k;
    k.kind = Kind::Exponential;
    k.lambda = lambda;
    return k;
}

CorrelationKernel CorrelationKernel::quadratic(double lambda1, double lambda2, double cutoff) {
    if (!(lambda2 > 0)) throw std::invalid_argument("lambda2 must be positive");
    CorrelationKernel k;
    k.kind = Kind::Quadratic;
    k.lambda1 = lambda1;
    k.lambda2 = lambda2;
    k.lambda = 1.0 / std::sqrt(2.0 * lambda2);
    k.cutoff = cutoff < 0 ? 1.0 / std::sqrt(lambda2) : cutoff;
    return k;
}

CorrelationKernel CorrelationKernel::quadratic_matching_sech(double lambda, double cutoff) {
    require_positive_lambda(lambda);
    auto k = quadratic(0.0, 1.0 / (2.0 * lambda * lambda), cutoff);
    k.lambda = lambda;
    return k;
}

std::string CorrelationKernel::name() const {
    switch (kind) {
        case Kind::Coherent: return "coherent";
        case Kind::Sech: return "sech";
        case Kind::Exponential: return "exponential";
        case Kind::Quadratic: return "quadratic";
    }
    return "unknown";
}

std::string CorrelationKernel::label() const {
    if (kind == Kind::Coherent) return name();
    std::ostringstream os;
    os << name() << '(' << lambda << ')';
    return os.str();
}

std::complex<double> eval_delta(const CorrelationKernel& kernel, double eta) {
    using K = CorrelationKernel::Kind;
    switch (kernel.kind) {
        case K::Coherent: return 1.0;
        case K::Sech: return 1.0 / std::cosh(eta / kernel.lambda);
        case K::Exponential: return std::exp(-std::abs(eta) / kernel.lambda);
        case K::Quadratic:
            if (std::abs(eta) > kernel.cutoff) return 0.0;
            return {1.0 - kernel.lambda2 * eta * eta, kernel.lambda1 * eta};
    }
    return 1.0;
}

LambdaCoefficients lambda_coeffs(const CorrelationKernel& kernel) {
    using K = CorrelationKernel::Kind;
    switch (kernel.kind) {
        case K::Coherent: return {0.0, 0.0};
        // 1/cosh(u) = 1 - u^2/2 + O(u^4)
        case K::Sech: return {0.0, 1.0 / (2.0 * kernel.lambda * kernel.lambda)};
        case K::Quadratic: return {kernel.lambda1, kernel.lambda2};
        case K::Exponential:
            throw NonDifferentiableKernel("non-differentiable kernel: exponential damping has a cusp at 0");
    }
    return {};
}

WignerField convolve_with_kernel(const WignerField& field, const CorrelationKernel& kernel) {
    const auto& grid = field.grid;
    const int n = grid.n_p();
    std::vector<cplx> delta(n);
    for (int k = 0; k < n; ++k) delta[k] = eval_delta(kernel, grid.eta(k));

    WignerField out(grid, field.time);
    MomentumTransform transform(grid);
    std::vector<cplx> g(n);
    for (int i = 0; i < grid.n_x(); ++i) {
        transform.forward(field.row(i), g);
        for (int k = 0; k < n; ++k) g[k] *= delta[k];
        transform.inverse(g, out.row(i));
    }
    return out;
}

std::optional<std::string> kernel_resolution_warning(const CorrelationKernel& kernel,
                                                     const PhaseSpaceGrid& grid) {
    const double step = std::abs(eval_delta(kernel, grid.deta()));
    if (step < 1e-3) {
        std::ostringstream os;
        os << "kernel " << kernel.label() << " decays to " << step
           << " within one correlation step (deta = " << grid.deta()
           << "); widen the momentum range or increase lambda";
        return os.str();
    }
    return std::nullopt;
}

}  // namespace wigner
