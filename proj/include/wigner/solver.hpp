#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wigner/fft.hpp"
#include "wigner/grid.hpp"
#include "wigner/kernels.hpp"
#include "wigner/observables.hpp"
#include "wigner/potential.hpp"

namespace wigner {

struct GridSpec {
    double x_min = -150.0;
    double x_max = 250.0;
    int n_x = 2048;
    double p_min = -6.0;
    double p_max = 6.0;
    int n_p = 512;
};

/**
 * Dimensionless run parameters. Energies are in units of the barrier height,
 * lengths in units of the reference width, and p0 = sqrt(2 E_K) is always
 * derived from `energy`.
 */
struct SimulationConfig {
    double energy = 0.5;       ///< E_K
    double sigma0 = 0.05;      ///< initial momentum standard deviation
    double tau = 3.0;          ///< collision time
    CorrelationKernel kernel;  ///< coherent by default
    double hbar = 1.0;
    std::optional<Barrier> barrier = Barrier{1.0};  ///< nullopt: flat potential
    double x0 = -30.0;
    GridSpec grid;
    double dt = 0.01;
    double t_final = 60.0;
    std::vector<double> snapshot_times{12.0, 24.0, 36.0, 48.0, 60.0};
    double boundary_threshold = 1e-6;
    int sample_every = 10;  ///< moments are recorded every this many steps

    double p0() const;
    double position_std() const;  ///< hbar / (2 sigma0)
    long steps() const;           ///< t_final / dt, rounded
    PhaseSpaceGrid make_grid() const;

    /// Throws ConfigError naming the first offending key.
    void validate() const;
};

/// Analytic phase-space mass of the initial Gaussian lying outside the domain.
double initial_mass_outside(const SimulationConfig& config);

/**
 * Minimum-uncertainty Gaussian centred at (x0, p0):
 *   f = 1/(pi hbar) exp(-2 sigma0^2 (x - x0)^2 / hbar^2 - (p - p0)^2 / (2 sigma0^2)),
 * rescaled so the discrete phase-space integral is exactly 1.
 * Throws GridClipsPacket when more than 1e-10 of the analytic mass falls
 * outside the domain.
 */
WignerField initial_wigner(const SimulationConfig& config);

/// exp(-dt [i dV(x, eta)/hbar + (1 - Delta(eta))/tau]); flat potential when
/// `barrier` is empty.
cplx kick_multiplier(const std::optional<Barrier>& barrier, const CorrelationKernel& kernel,
                     double hbar, double tau, double dt, double x, double eta);

/**
 * Strang splitting for the decoherent Wigner equation: exact free streaming
 * (a spectral shift along x of every momentum column, periodic in x) around
 * an exact correlation-space step that applies the potential and the
 * collision factor together.
 *
 * The solver owns FFT plans, scratch space and the precomputed multipliers
 * for one grid and one dt; it mutates fields in place.
 */
class SplitStepSolver {
public:
    /// Throws NonRealField if the kick symbol violates M(x, -eta) = conj(M(x, eta)).
    SplitStepSolver(const PhaseSpaceGrid& grid, std::optional<Barrier> barrier,
                    CorrelationKernel kernel, double tau, double dt);
    explicit SplitStepSolver(const SimulationConfig& config);

    /// f(x, p) <- f(x - p * duration, p); advances the time stamp.
    void drift(WignerField& field, double duration);
    void drift_half_step(WignerField& field) { drift(field, 0.5 * dt_); }
    /// Potential + collision over one full dt. Leaves g(x, 0), hence the
    /// density, untouched.
    void kick_step(WignerField& field);
    /// drift(dt/2), kick, drift(dt/2).
    void strang_step(WignerField& field);
    /// `steps` Strang steps; with `fuse` adjacent half drifts are merged.
    void advance(WignerField& field, long steps, bool fuse = true);

    double dt() const noexcept { return dt_; }
    const PhaseSpaceGrid& grid() const noexcept { return grid_; }
    /// Multiplier on the full correlation lattice for row i (eta index k).
    cplx multiplier(int i, int k) const;

private:
    const fft::AlignedBuffer<cplx>& drift_table(double duration);
    void fill_drift_table(fft::AlignedBuffer<cplx>& table, double duration) const;
    void check_field(const WignerField& field) const;

    PhaseSpaceGrid grid_;
    std::optional<Barrier> barrier_;
    CorrelationKernel kernel_;
    double tau_;
    double dt_;
    int block_;  // momentum columns per drift batch

    // Kick: conj(M)/n_p in r2c layout per row.
    fft::AlignedBuffer<cplx> kick_table_;

    fft::AlignedBuffer<cplx> drift_full_, drift_half_, drift_other_;
    double other_duration_ = 0.0;
    bool have_full_ = false, have_half_ = false, have_other_ = false;

    fft::AlignedBuffer<double> row_buf_;
    fft::AlignedBuffer<cplx> row_spec_;
    fft::AlignedBuffer<double> col_buf_;
    fft::AlignedBuffer<cplx> col_spec_;
    fft::Plan row_r2c_, row_c2r_, col_r2c_, col_c2r_;
};

struct RunResult {
    MomentSeries moments;
    std::vector<WignerField> snapshots;
    WignerField final_field;
    std::vector<std::string> warnings;
    std::optional<double> boundary_warning_time;
};

/// Throws NonFiniteField carrying `step` when any moment is NaN or infinite.
/// The moments sum every entry, so this detects a non-finite field.
void ensure_finite(const MomentRecord& m, long step);

/// Called after every recorded sample with the synchronised field.
using SampleObserver = std::function<void(const WignerField&, const MomentRecord&)>;

/**
 * Integrates from t = 0 to t_final with fixed dt. Moments are recorded every
 * `sample_every` steps, at every snapshot time and at t_final; half drifts
 * are fused between recorded samples. Throws NonFiniteField with the step
 * index if the field stops being finite.
 */
RunResult run(const SimulationConfig& config, std::span<const SampleObserver> observers = {});

}  // namespace wigner
