// wignersim: command-line front end for the decoherent Wigner scattering solver.
//
// Exit codes: 0 success, 1 configuration error, 2 runtime failure,
// 3 failed validation check.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wigner/config.hpp"
#include "wigner/errors.hpp"
#include "wigner/experiments.hpp"
#include "wigner/io.hpp"

namespace fs = std::filesystem;
using namespace wigner;

namespace {

constexpr int kConfigError = 1;
constexpr int kRuntimeError = 2;
constexpr int kValidationFailed = 3;

struct ConfigArgs {
    std::string path;
    std::vector<std::string> sets;

    void attach(CLI::App* cmd) {
        cmd->add_option("-c,--config", path, "key = value configuration file")
            ->check(CLI::ExistingFile);
        cmd->add_option("-s,--set", sets, "override one key, e.g. --set lambda=4 (repeatable)");
    }

    SimulationConfig load() const {
        return path.empty() ? parse_config("", sets) : load_config(path, sets);
    }
};

std::string key_table() {
    std::ostringstream os;
    os << "Configuration keys (default in brackets):\n";
    for (const auto& k : config_keys()) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "  %-19s [%s]", k.key.c_str(), k.default_value.c_str());
        os << buf << "\n      " << k.help << "\n";
    }
    return os.str();
}

CorrelationKernel parse_kernel(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    if (kind == "coherent" && colon == std::string::npos) return CorrelationKernel::coherent();
    if (colon == std::string::npos)
        throw ConfigError("kernels", "kernel '" + spec + "' needs a length, e.g. sech:4");
    double lambda = 0.0;
    try {
        lambda = std::stod(spec.substr(colon + 1));
    } catch (const std::exception&) {
        throw ConfigError("kernels", "unparsable kernel length in '" + spec + "'");
    }
    try {
        if (kind == "sech") return CorrelationKernel::sech(lambda);
        if (kind == "exponential") return CorrelationKernel::exponential(lambda);
        if (kind == "quadratic") return CorrelationKernel::quadratic_matching_sech(lambda);
    } catch (const std::invalid_argument& e) {
        throw ConfigError("kernels", e.what());
    }
    throw ConfigError("kernels", "unknown kernel '" + kind + "'");
}

void print_warnings(const RunResult& r) {
    for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
}

int cmd_run(const ConfigArgs& args, const std::string& out) {
    const auto config = args.load();
    const auto result = paper_case(config, fs::path(out));
    print_warnings(result.run);
    const auto& last = result.run.moments.back();
    std::printf("kernel %s  E_K %g  t %g\n", config.kernel.label().c_str(), config.energy, last.t);
    std::printf("<x> %.6f  <p> %.6f  sigma20 %.6g  sigma02 %.6g  sigma11 %.6g\n", last.x_avg,
                last.p_avg, last.sigma20, last.sigma02, last.sigma11);
    std::printf("T %.6f%s  norm drift %.3e\n", result.transmission.value,
                result.transmission.clamped ? " (clamped)" : "",
                last.norm - result.run.moments.front().norm);
    std::printf("outputs in %s\n", out.c_str());
    return 0;
}

int cmd_sweep(const ConfigArgs& args, std::vector<double> energies,
              const std::vector<std::string>& kernel_specs, const std::string& out) {
    const auto base = args.load();
    if (energies.empty()) energies = default_sweep_energies();
    std::vector<CorrelationKernel> kernels;
    for (const auto& s : kernel_specs) kernels.push_back(parse_kernel(s));
    if (kernels.empty()) kernels = default_sweep_kernels();
    for (double e : energies)
        if (!(e > 0)) throw ConfigError("energies", "energies must be positive");

    const auto cells = transmission_sweep(base, energies, kernels, [](const SweepCell& c) {
        if (c.transmission)
            std::printf("E_K %-5g %-12s T %.5f\n", c.energy, c.kernel.label().c_str(),
                        c.transmission->value);
        else
            std::printf("E_K %-5g %-12s failed: %s\n", c.energy, c.kernel.label().c_str(),
                        c.error.c_str());
        std::fflush(stdout);
    });
    fs::create_directories(out);
    write_text(fs::path(out) / "sweep.csv", format_sweep_csv(cells));
    write_text(fs::path(out) / "sweep_report.txt", format_sweep_report(cells, base));
    std::printf("outputs in %s\n", out.c_str());
    return 0;
}

int cmd_width(const ConfigArgs& args, std::vector<double> widths, double window,
              const std::string& out) {
    const auto base = args.load();
    if (widths.empty()) widths = {1, 2, 5, 8};
    for (double a : widths)
        if (!(a > 0)) throw ConfigError("widths", "barrier widths must be positive");
    if (!(window > 0)) throw ConfigError("window", "window must be positive");
    const auto rows = width_study(base, widths, window, fs::path(out));
    for (const auto& r : rows)
        std::printf("a %-4g jump %.5f %s\n", r.a, r.jump, r.smooth ? "smooth" : "sharp");
    std::printf("outputs in %s\n", out.c_str());
    return 0;
}

int cmd_validate(const ConfigArgs& args, double cross_time) {
    const auto base = args.load();
    if (cross_time < 0) cross_time = base.t_final;
    const auto checks = validation_suite(base, cross_time);
    bool ok = true;
    for (const auto& c : checks) {
        std::printf("%s  %s: %s\n", c.passed ? "PASS" : "FAIL", c.name.c_str(), c.detail.c_str());
        ok = ok && c.passed;
    }
    return ok ? 0 : kValidationFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Decoherent Wigner equation: Gaussian packet scattering on a Gaussian barrier"};
    app.footer(key_table());
    app.require_subcommand(1);

    ConfigArgs run_args, sweep_args, width_args, validate_args;
    std::string run_out = "out/run", sweep_out = "out/sweep", width_out = "out/width";
    std::vector<double> energies, widths;
    std::vector<std::string> kernels;
    double window = 2.0;
    double cross_time = -1.0;

    auto* run_cmd = app.add_subcommand("run", "integrate one configuration and write its outputs");
    run_args.attach(run_cmd);
    run_cmd->add_option("-o,--out", run_out, "output directory")->capture_default_str();

    auto* sweep_cmd = app.add_subcommand("sweep", "transmission coefficient over energy and kernel");
    sweep_args.attach(sweep_cmd);
    sweep_cmd->add_option("-e,--energies", energies, "E_K values [0.5, 0.6, ..., 2.0]")
        ->delimiter(',');
    sweep_cmd->add_option("-k,--kernels", kernels,
                          "kernels as coherent, sech:L, exponential:L or quadratic:L "
                          "[coherent,sech:10,sech:4]")
        ->delimiter(',');
    sweep_cmd->add_option("-o,--out", sweep_out, "output directory")->capture_default_str();

    auto* width_cmd = app.add_subcommand("width", "density jump against barrier width");
    width_args.attach(width_cmd);
    width_cmd->add_option("-a,--widths", widths, "barrier widths [1,2,5,8]")->delimiter(',');
    width_cmd->add_option("-w,--window", window, "half-width of the jump window around x = 0")
        ->capture_default_str();
    width_cmd->add_option("-o,--out", width_out, "output directory")->capture_default_str();

    auto* validate_cmd = app.add_subcommand("validate", "oracle and property checks");
    validate_args.attach(validate_cmd);
    validate_cmd->add_option("--cross-check-time", cross_time,
                             "end of the Schrodinger cross-check [t_final]");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kConfigError;
    }

    try {
        if (*run_cmd) return cmd_run(run_args, run_out);
        if (*sweep_cmd) return cmd_sweep(sweep_args, energies, kernels, sweep_out);
        if (*width_cmd) return cmd_width(width_args, widths, window, width_out);
        if (*validate_cmd) return cmd_validate(validate_args, cross_time);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const NonFiniteField& e) {
        std::cerr << "runtime failure at step " << e.step() << ": " << e.what() << "\n";
        return kRuntimeError;
    } catch (const std::exception& e) {
        std::cerr << "runtime failure: " << e.what() << "\n";
        return kRuntimeError;
    }
    return 0;
}
