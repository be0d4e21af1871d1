#include "wigner/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

#include "wigner/errors.hpp"

namespace wigner {

namespace {

constexpr double kClipTolerance = 1e-10;

bool is_multiple_of(double value, double step) {
    const double q = value / step;
    return std::abs(q - std::round(q)) <= 1e-9 * std::max(1.0, std::abs(q));
}

}  // namespace

// ---------------------------------------------------------------------------
// SimulationConfig

double SimulationConfig::p0() const { return std::sqrt(2.0 * energy); }

double SimulationConfig::position_std() const { return hbar / (2.0 * sigma0); }

long SimulationConfig::steps() const { return std::lround(t_final / dt); }

PhaseSpaceGrid SimulationConfig::make_grid() const {
    return build_grid(grid.x_min, grid.x_max, grid.n_x, grid.p_min, grid.p_max, grid.n_p, hbar);
}

void SimulationConfig::validate() const {
    auto positive = [](double v, const char* key) {
        if (!(v > 0) || !std::isfinite(v))
            throw ConfigError(key, std::string(key) + " must be positive");
    };
    positive(energy, "E_K");
    positive(sigma0, "sigma0");
    positive(tau, "tau");
    positive(hbar, "hbar");
    positive(dt, "dt");
    if (kernel.kind != CorrelationKernel::Kind::Coherent) positive(kernel.lambda, "lambda");
    if (kernel.kind == CorrelationKernel::Kind::Quadratic) positive(kernel.lambda2, "lambda2");
    if (barrier) positive(barrier->a, "barrier_width");
    if (!std::isfinite(x0)) throw ConfigError("x0", "x0 must be finite");
    if (!(t_final >= 0) || !std::isfinite(t_final))
        throw ConfigError("t_final", "t_final must be non-negative");
    if (!is_multiple_of(t_final, dt))
        throw ConfigError("t_final", "t_final must be a whole number of dt steps");
    positive(boundary_threshold, "boundary_threshold");
    if (sample_every < 1) throw ConfigError("sample_every", "sample_every must be at least 1");
    for (double t : snapshot_times) {
        if (!(t >= 0) || t > t_final * (1 + 1e-12))
            throw ConfigError("snapshot_times", "snapshot_times must lie in [0, t_final]");
        if (!is_multiple_of(t, dt))
            throw ConfigError("snapshot_times", "snapshot_times must be whole numbers of dt steps");
    }
    const auto& g = grid;
    if (g.n_x % 2 != 0 || g.n_x < 8) throw ConfigError("n_x", "n_x must be even and at least 8");
    if (g.n_p % 2 != 0 || g.n_p < 8) throw ConfigError("n_p", "n_p must be even and at least 8");
    if (!(g.x_min < g.x_max)) throw ConfigError("x_max", "x_max must exceed x_min");
    if (!(g.p_min < g.p_max)) throw ConfigError("p_max", "p_max must exceed p_min");
}

// ---------------------------------------------------------------------------
// Initial datum

double initial_mass_outside(const SimulationConfig& c) {
    const double sx = c.position_std();
    const double sp = c.sigma0;
    const double r2 = std::numbers::sqrt2;
    const double p0 = c.p0();
    const double out_x = 0.5 * std::erfc((c.grid.x_max - c.x0) / (r2 * sx)) +
                         0.5 * std::erfc((c.x0 - c.grid.x_min) / (r2 * sx));
    const double out_p = 0.5 * std::erfc((c.grid.p_max - p0) / (r2 * sp)) +
                         0.5 * std::erfc((p0 - c.grid.p_min) / (r2 * sp));
    return out_x + out_p - out_x * out_p;
}

WignerField initial_wigner(const SimulationConfig& config) {
    const auto grid = config.make_grid();
    const double outside = initial_mass_outside(config);
    if (outside > kClipTolerance) {
        std::ostringstream os;
        os << "grid clips initial packet: analytic mass " << outside
           << " lies outside the phase-space domain";
        throw GridClipsPacket(os.str());
    }

    const double h = config.hbar;
    const double s = config.sigma0;
    const double p0 = config.p0();
    const double ax = 2.0 * s * s / (h * h);
    const double ap = 1.0 / (2.0 * s * s);
    const double peak = 1.0 / (std::numbers::pi * h);

    std::vector<double> px(grid.n_x()), pp(grid.n_p());
    for (int i = 0; i < grid.n_x(); ++i) {
        const double d = grid.x(i) - config.x0;
        px[i] = std::exp(-ax * d * d);
    }
    for (int j = 0; j < grid.n_p(); ++j) {
        const double d = grid.p(j) - p0;
        pp[j] = std::exp(-ap * d * d);
    }

    WignerField f(grid, 0.0);
    double sum = 0.0;
    for (int i = 0; i < grid.n_x(); ++i) {
        auto row = f.row(i);
        for (int j = 0; j < grid.n_p(); ++j) {
            row[j] = peak * px[i] * pp[j];
            sum += row[j];
        }
    }
    const double scale = 1.0 / (sum * grid.dx() * grid.dp());
    for (double& v : f.values) v *= scale;
    return f;
}

// ---------------------------------------------------------------------------
// Split-step solver

cplx kick_multiplier(const std::optional<Barrier>& barrier, const CorrelationKernel& kernel,
                     double hbar, double tau, double dt, double x, double eta) {
    const double dv = barrier ? delta_v(*barrier, x, eta) : 0.0;
    const cplx one_minus_delta = 1.0 - eval_delta(kernel, eta);
    const cplx rate = cplx(0.0, dv / hbar) + one_minus_delta / tau;
    return std::exp(-dt * rate);
}

SplitStepSolver::SplitStepSolver(const SimulationConfig& config)
    : SplitStepSolver(config.make_grid(), config.barrier, config.kernel, config.tau, config.dt) {}

SplitStepSolver::SplitStepSolver(const PhaseSpaceGrid& grid, std::optional<Barrier> barrier,
                                 CorrelationKernel kernel, double tau, double dt)
    : grid_(grid),
      barrier_(barrier),
      kernel_(kernel),
      tau_(tau),
      dt_(dt) {
    if (!(dt > 0)) throw std::invalid_argument("dt must be positive");
    if (!(tau > 0)) throw std::invalid_argument("tau must be positive");

    const int nx = grid_.n_x();
    const int np = grid_.n_p();
    const int nph = np / 2 + 1;
    const int nxh = nx / 2 + 1;
    block_ = np % 8 == 0 ? 8 : (np % 4 == 0 ? 4 : 2);

    kick_table_ = fft::AlignedBuffer<cplx>(static_cast<std::size_t>(nx) * nph);
    const double inv_n = 1.0 / np;
    const double hbar = grid_.hbar();
    for (int i = 0; i < nx; ++i) {
        const double x = grid_.x(i);
        cplx* t = kick_table_.data() + static_cast<std::size_t>(i) * nph;
        for (int k = 0; k < np / 2; ++k) {
            const double eta = k * grid_.deta();
            const cplx m = kick_multiplier(barrier_, kernel_, hbar, tau_, dt_, x, eta);
            const cplx mirror = kick_multiplier(barrier_, kernel_, hbar, tau_, dt_, x, -eta);
            if (std::abs(mirror - std::conj(m)) > 1e-12) {
                std::ostringstream os;
                os << "non-real field: kick symbol is not conjugate-symmetric at x = " << x
                   << ", eta = " << eta;
                throw NonRealField(os.str());
            }
            t[k] = std::conj(m) * inv_n;
        }
        // eta = -n/2 deta stands for both aliases +-n/2 deta; the symmetric
        // average of their multipliers is the real part.
        const cplx m = kick_multiplier(barrier_, kernel_, hbar, tau_, dt_, x, -(np / 2) * grid_.deta());
        t[np / 2] = m.real() * inv_n;
    }

    row_buf_ = fft::AlignedBuffer<double>(np);
    row_spec_ = fft::AlignedBuffer<cplx>(nph);
    row_r2c_ = fft::plan_r2c(np, 1, row_buf_.data(), row_spec_.data());
    row_c2r_ = fft::plan_c2r(np, 1, row_spec_.data(), row_buf_.data());

    col_buf_ = fft::AlignedBuffer<double>(static_cast<std::size_t>(nx) * block_);
    col_spec_ = fft::AlignedBuffer<cplx>(static_cast<std::size_t>(nxh) * block_);
    col_r2c_ = fft::plan_r2c(nx, block_, col_buf_.data(), col_spec_.data());
    col_c2r_ = fft::plan_c2r(nx, block_, col_spec_.data(), col_buf_.data());
}

cplx SplitStepSolver::multiplier(int i, int k) const {
    return kick_multiplier(barrier_, kernel_, grid_.hbar(), tau_, dt_, grid_.x(i), grid_.eta(k));
}

void SplitStepSolver::fill_drift_table(fft::AlignedBuffer<cplx>& table, double duration) const {
    const int nx = grid_.n_x();
    const int np = grid_.n_p();
    const int nxh = nx / 2 + 1;
    if (table.size() != static_cast<std::size_t>(np) * nxh)
        table = fft::AlignedBuffer<cplx>(static_cast<std::size_t>(np) * nxh);
    const double dk = 2.0 * std::numbers::pi / (nx * grid_.dx());
    const double inv_n = 1.0 / nx;
    for (int j = 0; j < np; ++j) {
        const double shift = grid_.p(j) * duration;
        cplx* t = table.data() + static_cast<std::size_t>(j) * nxh;
        for (int m = 0; m < nxh - 1; ++m) t[m] = std::polar(inv_n, -m * dk * shift);
        // Nyquist: only the real part survives a real inverse.
        t[nxh - 1] = inv_n * std::cos((nxh - 1) * dk * shift);
    }
}

const fft::AlignedBuffer<cplx>& SplitStepSolver::drift_table(double duration) {
    if (duration == dt_) {
        if (!have_full_) fill_drift_table(drift_full_, duration), have_full_ = true;
        return drift_full_;
    }
    if (duration == 0.5 * dt_) {
        if (!have_half_) fill_drift_table(drift_half_, duration), have_half_ = true;
        return drift_half_;
    }
    if (!have_other_ || other_duration_ != duration) {
        fill_drift_table(drift_other_, duration);
        other_duration_ = duration;
        have_other_ = true;
    }
    return drift_other_;
}

void SplitStepSolver::check_field(const WignerField& field) const {
    if (field.grid != grid_) throw std::invalid_argument("field grid does not match the solver grid");
}

void SplitStepSolver::drift(WignerField& field, double duration) {
    check_field(field);
    const auto& table = drift_table(duration);
    const int nx = grid_.n_x();
    const int np = grid_.n_p();
    const int nxh = nx / 2 + 1;
    const int b = block_;
    double* f = field.values.data();
    double* buf = col_buf_.data();
    cplx* spec = col_spec_.data();

    for (int j0 = 0; j0 < np; j0 += b) {
        for (int i = 0; i < nx; ++i) {
            const double* src = f + static_cast<std::size_t>(i) * np + j0;
            for (int c = 0; c < b; ++c) buf[static_cast<std::size_t>(c) * nx + i] = src[c];
        }
        col_r2c_.execute();
        for (int c = 0; c < b; ++c) {
            const cplx* t = table.data() + static_cast<std::size_t>(j0 + c) * nxh;
            cplx* s = spec + static_cast<std::size_t>(c) * nxh;
            for (int m = 0; m < nxh; ++m) s[m] *= t[m];
        }
        col_c2r_.execute();
        for (int i = 0; i < nx; ++i) {
            double* dst = f + static_cast<std::size_t>(i) * np + j0;
            for (int c = 0; c < b; ++c) dst[c] = buf[static_cast<std::size_t>(c) * nx + i];
        }
    }
    field.time += duration;
}

void SplitStepSolver::kick_step(WignerField& field) {
    check_field(field);
    const int nx = grid_.n_x();
    const int np = grid_.n_p();
    const int nph = np / 2 + 1;
    double* rbuf = row_buf_.data();
    cplx* spec = row_spec_.data();
    for (int i = 0; i < nx; ++i) {
        auto row = field.row(i);
        std::copy(row.begin(), row.end(), rbuf);
        row_r2c_.execute();
        const cplx* t = kick_table_.data() + static_cast<std::size_t>(i) * nph;
        for (int k = 0; k < nph; ++k) spec[k] *= t[k];
        row_c2r_.execute();

        std::copy(rbuf, rbuf + np, row.begin());
    }
}

void SplitStepSolver::strang_step(WignerField& field) {
    drift(field, 0.5 * dt_);
    kick_step(field);
    drift(field, 0.5 * dt_);
}

void SplitStepSolver::advance(WignerField& field, long steps, bool fuse) {
    if (steps <= 0) return;
    const double t_end = field.time + steps * dt_;
    if (!fuse) {
        for (long s = 0; s < steps; ++s) strang_step(field);
    } else {
        drift(field, 0.5 * dt_);
        for (long s = 0; s < steps; ++s) {
            kick_step(field);
            drift(field, s + 1 < steps ? dt_ : 0.5 * dt_);
        }
    }
    field.time = t_end;
}

// ---------------------------------------------------------------------------
// Driver

void ensure_finite(const MomentRecord& m, long step) {
    const double vals[] = {m.norm, m.x_avg, m.p_avg, m.sigma20, m.sigma02, m.sigma11, m.energy};
    if (!std::all_of(std::begin(vals), std::end(vals), [](double v) { return std::isfinite(v); }))
        throw NonFiniteField(step, "non-finite field values detected at step " + std::to_string(step));
}

RunResult run(const SimulationConfig& config, std::span<const SampleObserver> observers) {
    config.validate();
    RunResult result;
    const auto grid = config.make_grid();
    if (auto w = kernel_resolution_warning(config.kernel, grid)) result.warnings.push_back(*w);

    SplitStepSolver solver(config);
    WignerField field = initial_wigner(config);

    const long total = config.steps();
    std::set<long> snapshot_steps;
    for (double t : config.snapshot_times) snapshot_steps.insert(std::lround(t / config.dt));

    auto record = [&](long step) {
        field.time = step * config.dt;
        const MomentRecord m = moments(field);
        ensure_finite(m, step);
        result.moments.push_back(m);
        for (const auto& obs : observers) obs(field, m);
        if (snapshot_steps.contains(step)) result.snapshots.push_back(field);
        if (!result.boundary_warning_time) {
            const auto n = density(field);
            const double edge = boundary_mass(n, grid);
            if (edge > config.boundary_threshold) {
                result.boundary_warning_time = field.time;
                std::ostringstream os;
                os << "boundary warning at t = " << field.time << ": mass " << edge
                   << " within 5 cells of the x boundary exceeds " << config.boundary_threshold
                   << "; the simulation domain should be made larger";
                result.warnings.push_back(os.str());
            }
        }
    };

    record(0);
    long step = 0;
    while (step < total) {
        long next = std::min(total, (step / config.sample_every + 1) * config.sample_every);
        auto it = snapshot_steps.upper_bound(step);
        if (it != snapshot_steps.end()) next = std::min(next, *it);
        solver.advance(field, next - step);
        step = next;
        record(step);
    }
    result.final_field = std::move(field);
    return result;
}

}  // namespace wigner
