#include "wigner/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <limits>
#include <random>
#include <sstream>

#include "wigner/config.hpp"
#include "wigner/io.hpp"
#include "wigner/oracle.hpp"

namespace wigner {

namespace {

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

double lambda_column(const CorrelationKernel& k) {
    return k.kind == CorrelationKernel::Kind::Coherent ? std::numeric_limits<double>::infinity()
                                                       : k.lambda;
}

// Last recorded sample at or before t.
const MomentRecord& sample_at(const MomentSeries& series, double t) {
    const MomentRecord* best = &series.front();
    for (const auto& m : series)
        if (m.t <= t + 1e-9) best = &m;
    return *best;
}

}  // namespace

std::string convention_note() {
    return "# sigma0 is the momentum standard deviation of the initial minimum-uncertainty\n"
           "# Gaussian: position variance hbar^2/(4 sigma0^2), momentum variance sigma0^2.\n";
}

SimulationConfig paper_config(const SimulationConfig& base, double energy,
                              const CorrelationKernel& kernel) {
    SimulationConfig c = base;
    c.energy = energy;
    c.sigma0 = 0.1 * energy;
    c.tau = 3.0;
    c.kernel = kernel;
    return c;
}

CaseResult paper_case(const SimulationConfig& config,
                      const std::optional<std::filesystem::path>& out_dir) {
    CaseResult out;
    out.config = config;
    out.run = run(config);
    out.transmission = transmission(out.run.moments.back().p_avg, config.p0());
    if (!out_dir) return out;

    const auto& dir = *out_dir;
    std::filesystem::create_directories(dir);
    write_text(dir / "config.txt", convention_note() + format_config(config));
    write_moments_csv(out.run.moments, dir / "moments.csv");
    for (const auto& snap : out.run.snapshots) {
        const std::string tag = "t" + fmt("%g", snap.time);
        write_density_csv(snap, dir / ("density_" + tag + ".csv"));
        write_snapshot(snap, dir / ("snapshot_" + tag + ".wig"));
        write_heatmap(snap, dir / ("heatmap_" + tag + ".ppm"));
    }

    const auto& last = out.run.moments.back();
    std::ostringstream s;
    s << convention_note();
    s << "kernel " << config.kernel.label() << "\n";
    s << "E_K " << config.energy << "\n";
    s << "t_final " << last.t << "\n";
    s << "p_final " << fmt("%.10g", last.p_avg) << "\n";
    s << "T " << fmt("%.10g", out.transmission.value) << "\n";
    s << "T_raw " << fmt("%.10g", out.transmission.raw) << "\n";
    s << "T_clamped " << (out.transmission.clamped ? "yes" : "no") << "\n";
    s << "norm_drift " << fmt("%.3e", last.norm - out.run.moments.front().norm) << "\n";
    s << "max_abs_f " << fmt("%.10g", max_abs(out.run.final_field)) << "\n";
    for (const auto& w : out.run.warnings) s << "warning " << w << "\n";
    write_text(dir / "summary.txt", s.str());
    return out;
}

std::vector<double> default_sweep_energies() {
    std::vector<double> e;
    for (int k = 5; k <= 20; ++k) e.push_back(k / 10.0);
    return e;
}

std::vector<CorrelationKernel> default_sweep_kernels() {
    return {CorrelationKernel::coherent(), CorrelationKernel::sech(10.0),
            CorrelationKernel::sech(4.0)};
}

std::vector<SweepCell> transmission_sweep(const SimulationConfig& base,
                                          const std::vector<double>& energies,
                                          const std::vector<CorrelationKernel>& kernels,
                                          const SweepProgress& progress) {
    std::vector<SweepCell> cells;
    for (double e : energies) {
        for (const auto& k : kernels) {
            SweepCell cell;
            cell.energy = e;
            cell.kernel = k;
            try {
                const auto config = paper_config(base, e, k);
                const auto r = run(config);
                const auto& last = r.moments.back();
                cell.final_moments = last;
                cell.p_final = last.p_avg;
                cell.transmission = transmission(last.p_avg, config.p0());
                cell.t_early = 0.8 * config.t_final;
                cell.p_early = sample_at(r.moments, cell.t_early).p_avg;
                cell.max_abs_final = max_abs(r.final_field);
                cell.boundary_warning_time = r.boundary_warning_time;
            } catch (const std::exception& ex) {
                cell.error = ex.what();
            }
            if (progress) progress(cell);
            cells.push_back(std::move(cell));
        }
    }
    return cells;
}

std::string format_sweep_csv(const std::vector<SweepCell>& cells) {
    std::string s = "E_K,lambda,T,p_final\n";
    for (const auto& c : cells) {
        s += fmt("%.17g", c.energy) + "," + fmt("%.17g", lambda_column(c.kernel)) + ",";
        if (c.transmission)
            s += fmt("%.17g", c.transmission->value) + "," + fmt("%.17g", c.p_final);
        else
            s += "nan,nan";
        s += "\n";
    }
    return s;
}

std::string format_sweep_report(const std::vector<SweepCell>& cells, const SimulationConfig& base) {
    std::ostringstream s;
    s << convention_note();
    s << "# tau = 3, sigma0 = 0.1 E_K; T from <p> at t_final = " << base.t_final << "\n";
    s << "# dT = |T(t_final) - T(0.8 t_final)| measures sensitivity to the end time\n";
    s << "E_K     kernel          T         T_raw      p_final     dT        notes\n";
    for (const auto& c : cells) {
        s << fmt("%-7.3g ", c.energy);
        char kbuf[32];
        std::snprintf(kbuf, sizeof kbuf, "%-15s ", c.kernel.label().c_str());
        s << kbuf;
        if (!c.transmission) {
            s << "failed: " << c.error << "\n";
            continue;
        }
        const double early = transmission(c.p_early, std::sqrt(2.0 * c.energy)).value;
        s << fmt("%-9.5f ", c.transmission->value) << fmt("%-10.5f ", c.transmission->raw)
          << fmt("%-11.5f ", c.p_final) << fmt("%-9.2e ", std::abs(c.transmission->value - early));
        if (c.transmission->clamped) s << "clamped ";
        if (c.boundary_warning_time) s << "boundary warning at t = " << *c.boundary_warning_time;
        s << "\n";
    }
    return s.str();
}

double smooth_jump_bound(const SimulationConfig& config) {
    return std::exp(-0.5) / config.position_std();
}

std::vector<WidthRow> width_study(const SimulationConfig& base, const std::vector<double>& a_values,
                                  double window,
                                  const std::optional<std::filesystem::path>& out_dir) {
    if (out_dir) std::filesystem::create_directories(*out_dir);
    std::vector<WidthRow> rows;
    for (double a : a_values) {
        auto config = paper_config(base, 0.5, CorrelationKernel::sech(4.0));
        config.barrier = Barrier::gaussian(a);
        const auto r = run(config);
        const auto n = density(r.final_field);
        WidthRow row;
        row.a = a;
        row.jump = jump_metric(n, r.final_field.grid, window);
        row.smooth = row.jump < smooth_jump_bound(config);
        row.p_final = r.moments.back().p_avg;
        row.boundary_warning_time = r.boundary_warning_time;
        rows.push_back(row);
        if (out_dir) write_density_csv(r.final_field, *out_dir / ("density_a" + fmt("%g", a) + ".csv"));
    }
    if (out_dir) write_text(*out_dir / "width_study.csv", format_width_csv(rows));
    return rows;
}

std::string format_width_csv(const std::vector<WidthRow>& rows) {
    std::string s = "a,jump_metric,smooth,p_final\n";
    for (const auto& r : rows)
        s += fmt("%.17g", r.a) + "," + fmt("%.17g", r.jump) + "," + (r.smooth ? "1" : "0") + "," +
             fmt("%.17g", r.p_final) + "\n";
    return s;
}

// ---------------------------------------------------------------------------
// Validation suite

namespace {

CheckResult check(std::string name, bool ok, std::string detail) {
    return {std::move(name), ok, std::move(detail)};
}

SimulationConfig flat(const SimulationConfig& base, const CorrelationKernel& k, double t) {
    SimulationConfig c = base;
    c.barrier.reset();
    c.kernel = k;
    c.t_final = t;
    c.snapshot_times = {t};
    return c;
}

CheckResult density_invariance(const SimulationConfig& base) {
    const auto grid = base.make_grid();
    WignerField f(grid);
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double sum = 0.0;
    for (double& v : f.values) sum += (v = u(rng));
    for (double& v : f.values) v /= sum * grid.dx() * grid.dp();
    const auto before = density(f);
    SplitStepSolver solver(grid, std::nullopt, CorrelationKernel::sech(4.0), base.tau, base.dt);
    solver.kick_step(f);
    const auto after = density(f);
    double worst = 0.0;
    for (std::size_t i = 0; i < before.size(); ++i)
        worst = std::max(worst, std::abs(after[i] - before[i]));
    return check("collision kick preserves density", worst < 1e-12,
                 "max |dn| = " + fmt("%.3e", worst));
}

CheckResult free_transport(const SimulationConfig& base) {
    const auto c = flat(base, CorrelationKernel::coherent(), 10.0);
    const auto r = run(c);
    const auto& m = r.moments.back();
    const auto e = oracle::flat_potential_moments(c, m.t);
    const double worst = std::max({std::abs(m.x_avg - e.x_avg), std::abs(m.p_avg - e.p_avg),
                                   std::abs(m.sigma20 - e.sigma20), std::abs(m.sigma02 - e.sigma02),
                                   std::abs(m.sigma11 - e.sigma11)});
    return check("free transport matches closed form at t = 10", worst < 1e-6,
                 "max moment error " + fmt("%.3e", worst));
}

CheckResult pumping(const SimulationConfig& base, double lambda) {
    const auto c = flat(base, CorrelationKernel::sech(lambda), 30.0);
    const auto r = run(c);
    const double got = r.moments.back().sigma02 - r.moments.front().sigma02;
    const double want = 30.0 * c.hbar * c.hbar / (lambda * lambda * c.tau);
    const double rel = std::abs(got - want) / want;
    return check("momentum variance pumping, sech(" + fmt("%g", lambda) + ")", rel < 5e-3,
                 "growth " + fmt("%.6g", got) + " vs " + fmt("%.6g", want) + ", relative error " +
                     fmt("%.2e", rel));
}

CheckResult fokker_planck(const SimulationConfig& base) {
    const auto c = flat(base, CorrelationKernel::quadratic(0.0, 1.0 / 32.0,
                                                           std::numeric_limits<double>::infinity()),
                        10.0);
    const auto r = run(c);
    const auto exact = oracle::diffusing_gaussian(c, r.final_field.time);
    double s = 0.0;
    for (std::size_t k = 0; k < exact.values.size(); ++k) {
        const double d = r.final_field.values[k] - exact.values[k];
        s += d * d;
    }
    const double l2 = std::sqrt(s * exact.grid.dx() * exact.grid.dp());
    return check("Fokker-Planck limit matches the diffusing Gaussian", l2 < 1e-4,
                 "L2 error " + fmt("%.3e", l2));
}

std::vector<CheckResult> coherent_cross_check(const SimulationConfig& base, double until) {
    SimulationConfig c = base;
    c.kernel = CorrelationKernel::coherent();
    c.t_final = until;
    c.snapshot_times.clear();
    std::vector<double> times;
    for (int k = 0; k <= static_cast<int>(std::floor(until + 1e-9)); ++k) times.push_back(k);

    const auto r = run(c);
    const auto psi = oracle::schrodinger_run(c, times);
    const auto grid = c.make_grid();
    double worst = 0.0;
    for (const auto& sample : psi) {
        auto f = oracle::wigner_transform(sample.psi, grid);
        f.time = sample.t;
        const auto o = moments(f);
        const auto& m = sample_at(r.moments, sample.t);
        worst = std::max({worst, std::abs(m.x_avg - o.x_avg), std::abs(m.p_avg - o.p_avg),
                          std::abs(m.sigma20 - o.sigma20), std::abs(m.sigma02 - o.sigma02),
                          std::abs(m.sigma11 - o.sigma11)});
    }
    double drift = 0.0;
    for (const auto& m : r.moments) drift = std::max(drift, std::abs(m.norm - 1.0));
    return {check("coherent moments match the Schrodinger oracle", worst < 1e-3,
                  "max moment difference " + fmt("%.3e", worst) + " over " +
                      std::to_string(times.size()) + " samples"),
            check("norm conserved", drift < 1e-10, "max |norm - 1| = " + fmt("%.3e", drift))};
}

CheckResult determinism(const SimulationConfig& base) {
    SimulationConfig c = base;
    c.t_final = std::min(base.t_final, 1.0);
    c.snapshot_times = {c.t_final};
    const auto a = run(c);
    const auto b = run(c);
    const bool same_csv = format_moments_csv(a.moments) == format_moments_csv(b.moments);
    const bool same_field =
        std::memcmp(a.final_field.values.data(), b.final_field.values.data(),
                    a.final_field.values.size() * sizeof(double)) == 0;
    return check("repeated runs are bit-identical", same_csv && same_field,
                 std::string("moments ") + (same_csv ? "identical" : "differ") + ", field " +
                     (same_field ? "identical" : "differs"));
}

}  // namespace

std::vector<CheckResult> validation_suite(const SimulationConfig& base, double cross_check_time) {
    std::vector<CheckResult> out;
    const auto guarded = [&](const std::string& name, const auto& fn) {
        try {
            fn();
        } catch (const std::exception& e) {
            out.push_back(check(name, false, std::string("error: ") + e.what()));
        }
    };
    guarded("collision kick preserves density", [&] { out.push_back(density_invariance(base)); });
    guarded("free transport", [&] { out.push_back(free_transport(base)); });
    guarded("pumping sech(4)", [&] { out.push_back(pumping(base, 4.0)); });
    guarded("pumping sech(10)", [&] { out.push_back(pumping(base, 10.0)); });
    guarded("Fokker-Planck limit", [&] { out.push_back(fokker_planck(base)); });
    guarded("coherent cross-check", [&] {
        for (auto& r : coherent_cross_check(base, cross_check_time)) out.push_back(std::move(r));
    });
    guarded("determinism", [&] { out.push_back(determinism(base)); });
    return out;
}

}  // namespace wigner
