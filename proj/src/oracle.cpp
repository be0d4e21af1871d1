#include "wigner/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "wigner/errors.hpp"

namespace wigner::oracle {

namespace {

using std::numbers::pi;

// Signed wavenumber of FFT bin m on a periodic lattice of n points.
double wavenumber(int m, int n, double dx) {
    const int s = m <= n / 2 ? m : m - n;
    return 2.0 * pi * s / (n * dx);
}

long whole_steps(double t, double dt) {
    const double s = t / dt;
    const long n = std::lround(s);
    if (t < 0 || std::abs(s - n) > 1e-9 * std::max(1.0, s))
        throw std::invalid_argument("sample time is not a whole number of steps");
    return n;
}

}  // namespace

Wavefunction initial_wavefunction(const SimulationConfig& config) {
    const auto grid = config.make_grid();
    const double h = config.hbar;
    const double s2 = config.sigma0 * config.sigma0;
    const double p0 = config.p0();
    const double amp = std::pow(2.0 * s2 / (pi * h * h), 0.25);
    Wavefunction psi(grid.n_x());
    for (int i = 0; i < grid.n_x(); ++i) {
        const double y = grid.x(i) - config.x0;
        psi[i] = amp * std::exp(cplx(-s2 * y * y / (h * h), p0 * y / h));
    }
    const double norm = wavefunction_norm(psi, grid.dx());
    for (auto& v : psi) v /= std::sqrt(norm);
    return psi;
}

double wavefunction_norm(const Wavefunction& psi, double dx) {
    double s = 0.0;
    for (const auto& v : psi) s += std::norm(v);
    return s * dx;
}

std::vector<WavefunctionSample> schrodinger_run(const SimulationConfig& config,
                                                std::span<const double> sample_times) {
    if (config.kernel.kind != CorrelationKernel::Kind::Coherent)
        throw std::invalid_argument("the Schrodinger oracle needs a coherent kernel");
    config.validate();
    const auto grid = config.make_grid();
    const int n = grid.n_x();
    const double h = config.hbar;
    const double dt = config.dt;

    std::vector<long> targets;
    for (double t : sample_times) {
        const long s = whole_steps(t, dt);
        if (!targets.empty() && s < targets.back())
            throw std::invalid_argument("sample times must be non-decreasing");
        targets.push_back(s);
    }

    fft::AlignedBuffer<cplx> psi(n), spec(n);
    auto forward = fft::plan_c2c(n, psi.data(), spec.data(), FFTW_FORWARD);
    auto backward = fft::plan_c2c(n, spec.data(), psi.data(), FFTW_BACKWARD);

    std::vector<cplx> half_kin(n), full_kin(n), pot(n, 1.0);
    for (int m = 0; m < n; ++m) {
        const double k = wavenumber(m, n, grid.dx());
        half_kin[m] = std::polar(1.0 / n, -h * k * k * dt / 4.0);
        full_kin[m] = std::polar(1.0 / n, -h * k * k * dt / 2.0);
    }
    if (config.barrier)
        for (int i = 0; i < n; ++i)
            pot[i] = std::polar(1.0, -eval_potential(*config.barrier, grid.x(i)) * dt / h);

    const auto kinetic = [&](const std::vector<cplx>& phase) {
        forward.execute();
        for (int m = 0; m < n; ++m) spec[m] *= phase[m];
        backward.execute();
    };

    const auto psi0 = initial_wavefunction(config);
    std::copy(psi0.begin(), psi0.end(), psi.data());

    std::vector<WavefunctionSample> out;
    long done = 0;
    for (long target : targets) {
        const long count = target - done;
        if (count > 0) {
            kinetic(half_kin);
            for (long s = 1; s <= count; ++s) {
                for (int i = 0; i < n; ++i) psi[i] *= pot[i];
                kinetic(s < count ? full_kin : half_kin);
            }
            done = target;
        }
        out.push_back({static_cast<double>(target) * dt,
                       Wavefunction(psi.data(), psi.data() + n)});
    }
    return out;
}

WignerField wigner_transform_correlations(const std::vector<std::vector<cplx>>& rows,
                                          const PhaseSpaceGrid& grid) {
    const int np = grid.n_p();
    if (rows.size() != static_cast<std::size_t>(grid.n_x()))
        throw std::invalid_argument("one correlation row per x point is required");
    for (const auto& r : rows)
        if (r.size() != static_cast<std::size_t>(np))
            throw std::invalid_argument("correlation rows must have n_p entries");

    double peak = 0.0, asymmetry = 0.0;
    for (const auto& r : rows)
        for (int k = 0; k < np; ++k) {
            peak = std::max(peak, std::abs(r[k]));
            if (k > 0) asymmetry = std::max(asymmetry, std::abs(r[k] - std::conj(r[np - k])));
        }
    if (asymmetry > 1e-8 * peak)
        throw NonRealField("non-real transform: correlation asymmetry " + std::to_string(asymmetry) +
                           " against peak " + std::to_string(peak));

    WignerField field(grid);
    MomentumTransform transform(grid);
    std::vector<cplx> g(np);
    for (int i = 0; i < grid.n_x(); ++i) {
        std::copy(rows[i].begin(), rows[i].end(), g.begin());
        // The most negative eta has no partner on the lattice; keep the
        // symmetric (real) part, as the kick step does.
        g[0] = g[0].real();
        transform.inverse(g, field.row(i));
    }
    return field;
}

WignerField wigner_transform(const Wavefunction& psi, const PhaseSpaceGrid& grid) {
    const int n = grid.n_x(), np = grid.n_p();
    if (psi.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("wavefunction length does not match the grid");

    fft::AlignedBuffer<cplx> buf(n), spec(n), plus(n), minus(n);
    auto forward = fft::plan_c2c(n, buf.data(), spec.data(), FFTW_FORWARD);
    auto backward = fft::plan_c2c(n, buf.data(), plus.data(), FFTW_BACKWARD);
    std::copy(psi.begin(), psi.end(), buf.data());
    forward.execute();

    // psi(x_i + s) by an exact spectral shift.
    const auto shifted = [&](double s, fft::AlignedBuffer<cplx>& out) {
        for (int m = 0; m < n; ++m)
            buf[m] = spec[m] * std::polar(1.0 / n, wavenumber(m, n, grid.dx()) * s);
        fftw_execute_dft(backward.get(), reinterpret_cast<fftw_complex*>(buf.data()),
                         reinterpret_cast<fftw_complex*>(out.data()));
    };

    std::vector<std::vector<cplx>> rows(n, std::vector<cplx>(np));
    for (int k = 0; k <= np / 2; ++k) {
        const double half_eta = 0.5 * grid.eta(k);
        shifted(half_eta, plus);
        shifted(-half_eta, minus);
        for (int i = 0; i < n; ++i) {
            const cplx r = plus[i] * std::conj(minus[i]);
            rows[i][k] = r;
            if (k > 0 && k < np / 2) rows[i][np - k] = std::conj(r);
        }
    }
    return wigner_transform_correlations(rows, grid);
}

namespace {

struct Covariance {
    double x, p, s20, s02, s11;
};

Covariance flat_covariance(const SimulationConfig& config, double t) {
    if (config.barrier) throw std::invalid_argument("closed-form moments need a flat potential");
    const auto c = lambda_coeffs(config.kernel);
    const double h = config.hbar;
    const double tau = config.tau;
    const double diff = 2.0 * h * h * c.lambda2 / tau;
    const double drift = h * c.lambda1 / tau;  // d<p>/dt
    const double s20 = h * h / (4.0 * config.sigma0 * config.sigma0);
    const double s02 = config.sigma0 * config.sigma0;
    const double s11 = 0.0;
    const double p0 = config.p0();
    return {config.x0 + p0 * t + 0.5 * drift * t * t,
            p0 + drift * t,
            s20 + 2.0 * s11 * t + s02 * t * t + diff * t * t * t / 3.0,
            s02 + diff * t,
            s11 + s02 * t + 0.5 * diff * t * t};
}

}  // namespace

MomentRecord flat_potential_moments(const SimulationConfig& config, double t) {
    const auto c = flat_covariance(config, t);
    MomentRecord r;
    r.t = t;
    r.x_avg = c.x;
    r.p_avg = c.p;
    r.sigma20 = c.s20;
    r.sigma02 = c.s02;
    r.sigma11 = c.s11;
    r.norm = 1.0;
    r.energy = 0.5 * (c.s02 + c.p * c.p);
    return r;
}

WignerField diffusing_gaussian(const SimulationConfig& config, double t) {
    const auto c = flat_covariance(config, t);
    const auto grid = config.make_grid();
    const double det = c.s20 * c.s02 - c.s11 * c.s11;
    const double norm = 1.0 / (2.0 * pi * std::sqrt(det));
    WignerField field(grid, t);
    for (int i = 0; i < grid.n_x(); ++i) {
        const double u = grid.x(i) - c.x;
        for (int j = 0; j < grid.n_p(); ++j) {
            const double v = grid.p(j) - c.p;
            const double q = (c.s02 * u * u - 2.0 * c.s11 * u * v + c.s20 * v * v) / det;
            field.at(i, j) = norm * std::exp(-0.5 * q);
        }
    }
    return field;
}

}  // namespace wigner::oracle
