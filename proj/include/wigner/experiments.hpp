#pragma once

// Scripted scattering studies: single cases, the transmission sweep over
// energy and correlation length, and the barrier-width study.

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wigner/solver.hpp"

namespace wigner {

/// Copy of `base` with tau = 3, sigma0 = 0.1 E_K and the given energy and kernel.
SimulationConfig paper_config(const SimulationConfig& base, double energy,
                              const CorrelationKernel& kernel);

struct CaseResult {
    SimulationConfig config;
    RunResult run;
    Transmission transmission;
};

/**
 * Runs `config` as is. With `out_dir`, writes config.txt, moments.csv,
 * summary.txt and, per snapshot time T, density_tT.csv, snapshot_tT.wig and
 * heatmap_tT.ppm.
 */
CaseResult paper_case(const SimulationConfig& config,
                      const std::optional<std::filesystem::path>& out_dir = std::nullopt);

struct SweepCell {
    double energy = 0.0;
    CorrelationKernel kernel;
    std::optional<Transmission> transmission;  ///< empty when the run failed
    double p_final = 0.0;
    double t_early = 0.0;  ///< 0.8 t_final, for the sensitivity column of the report
    double p_early = 0.0;
    MomentRecord final_moments;
    double max_abs_final = 0.0;
    std::optional<double> boundary_warning_time;
    std::string error;
};

/// 0.5, 0.6, ..., 2.0
std::vector<double> default_sweep_energies();
/// coherent, sech(10), sech(4)
std::vector<CorrelationKernel> default_sweep_kernels();

using SweepProgress = std::function<void(const SweepCell&)>;

/// One run per (energy, kernel) built with paper_config. Failures are
/// recorded in the cell and the sweep continues.
std::vector<SweepCell> transmission_sweep(const SimulationConfig& base,
                                          const std::vector<double>& energies,
                                          const std::vector<CorrelationKernel>& kernels,
                                          const SweepProgress& progress = {});

/// Columns `E_K,lambda,T,p_final`; failed cells carry nan.
std::string format_sweep_csv(const std::vector<SweepCell>& cells);
/// Human-readable table with clamping flags, errors, boundary warnings and
/// |T(t_final) - T(0.8 t_final)|.
std::string format_sweep_report(const std::vector<SweepCell>& cells, const SimulationConfig& base);

struct WidthRow {
    double a = 0.0;
    double jump = 0.0;
    bool smooth = false;  ///< jump below smooth_jump_bound
    double p_final = 0.0;
    std::optional<double> boundary_warning_time;
};

/// Largest normalised slope e^{-1/2}/sigma of a Gaussian density with the
/// initial position spread sigma = hbar / (2 sigma0).
double smooth_jump_bound(const SimulationConfig& config);

/**
 * E_K = 0.5, sech(4), tau = 3 (on top of `base`) for each barrier width;
 * jump_metric of n(x, t_final) over |x| <= window. With `out_dir`, writes
 * density_a<a>.csv per width and width_study.csv.
 */
std::vector<WidthRow> width_study(const SimulationConfig& base, const std::vector<double>& a_values,
                                  double window = 2.0,
                                  const std::optional<std::filesystem::path>& out_dir = std::nullopt);

std::string format_width_csv(const std::vector<WidthRow>& rows);

/// Header lines recording how sigma0 is interpreted.
std::string convention_note();

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

/**
 * Oracle and property checks around `base` (grid, dt, hbar): collision
 * density invariance, flat-potential closed forms, the pumping rate, the
 * Fokker-Planck limit, the coherent Schrodinger cross-check up to
 * `cross_check_time`, norm conservation and determinism.
 */
std::vector<CheckResult> validation_suite(const SimulationConfig& base, double cross_check_time);

}  // namespace wigner
