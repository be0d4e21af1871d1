#include "wigner/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "wigner/errors.hpp"

namespace wigner {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::string shortest(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, res.ptr};
}

double to_double(const std::string& key, const std::string& value) {
    double v = 0.0;
    const char* end = value.data() + value.size();
    const auto res = std::from_chars(value.data(), end, v);
    if (res.ec != std::errc{} || res.ptr != end || value.empty())
        throw ConfigError(key, "unparsable value for " + key + ": '" + value + "'");
    return v;
}

int to_int(const std::string& key, const std::string& value) {
    int v = 0;
    const char* end = value.data() + value.size();
    const auto res = std::from_chars(value.data(), end, v);
    if (res.ec != std::errc{} || res.ptr != end || value.empty())
        throw ConfigError(key, "unparsable value for " + key + ": '" + value + "'");
    return v;
}

std::vector<double> to_list(const std::string& key, const std::string& value) {
    std::vector<double> out;
    std::string_view rest = value;
    while (!trim(rest).empty()) {
        const auto comma = rest.find(',');
        const auto item = std::string(trim(rest.substr(0, comma)));
        out.push_back(to_double(key, item));
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
    }
    return out;
}

std::string join(const std::vector<double>& values) {
    std::string s;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) s += ",";
        s += shortest(values[i]);
    }
    return s;
}

using Settings = std::map<std::string, std::string>;

void assign(Settings& settings, std::string_view line, bool from_flag) {
    const auto hash = from_flag ? std::string_view::npos : line.find('#');
    line = trim(line.substr(0, hash));
    if (line.empty()) return;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
        const std::string key(line);
        throw ConfigError(key, "missing '=' after " + key);
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    const auto& keys = config_keys();
    const bool known = std::any_of(keys.begin(), keys.end(),
                                   [&](const ConfigKey& k) { return k.key == key; });
    if (!known) throw ConfigError(key, "unknown key " + key);
    settings[key] = value;
}

CorrelationKernel build_kernel(const Settings& s) {
    const auto get = [&](const char* key) -> const std::string* {
        const auto it = s.find(key);
        return it == s.end() ? nullptr : &it->second;
    };
    const auto positive = [&](const char* key) -> std::optional<double> {
        const auto* v = get(key);
        if (!v) return std::nullopt;
        const double x = to_double(key, *v);
        if (!(x > 0)) throw ConfigError(key, std::string(key) + " must be positive");
        return x;
    };

    const auto lambda = positive("lambda");
    const auto lambda2 = positive("lambda2");
    const double lambda1 = get("lambda1") ? to_double("lambda1", *get("lambda1")) : 0.0;
    double cutoff = -1.0;
    if (get("cutoff") && *get("cutoff") != "auto") cutoff = *positive("cutoff");

    const std::string kind = get("kernel") ? *get("kernel") : "coherent";
    if (kind == "coherent") return CorrelationKernel::coherent();
    if (kind == "sech" || kind == "exponential") {
        if (!lambda) throw ConfigError("lambda", "kernel " + kind + " needs lambda");
        return kind == "sech" ? CorrelationKernel::sech(*lambda)
                              : CorrelationKernel::exponential(*lambda);
    }
    if (kind == "quadratic") {
        if (lambda2) return CorrelationKernel::quadratic(lambda1, *lambda2, cutoff);
        if (lambda) {
            auto k = CorrelationKernel::quadratic_matching_sech(*lambda, cutoff);
            k.lambda1 = lambda1;
            return k;
        }
        throw ConfigError("lambda2", "kernel quadratic needs lambda2 or lambda");
    }
    throw ConfigError("kernel", "unknown kernel '" + kind +
                                    "' (expected coherent, sech, exponential or quadratic)");
}

SimulationConfig build(const Settings& s) {
    SimulationConfig c;
    const auto num = [&](const char* key, double& field) {
        if (const auto it = s.find(key); it != s.end()) field = to_double(key, it->second);
    };
    const auto integer = [&](const char* key, int& field) {
        if (const auto it = s.find(key); it != s.end()) field = to_int(key, it->second);
    };

    num("E_K", c.energy);
    c.sigma0 = 0.1 * c.energy;
    num("sigma0", c.sigma0);
    num("tau", c.tau);
    num("hbar", c.hbar);
    num("x0", c.x0);
    num("dt", c.dt);
    num("t_final", c.t_final);
    num("boundary_threshold", c.boundary_threshold);
    integer("sample_every", c.sample_every);
    num("x_min", c.grid.x_min);
    num("x_max", c.grid.x_max);
    integer("n_x", c.grid.n_x);
    num("p_min", c.grid.p_min);
    num("p_max", c.grid.p_max);
    integer("n_p", c.grid.n_p);
    if (const auto it = s.find("snapshot_times"); it != s.end())
        c.snapshot_times = to_list("snapshot_times", it->second);

    const std::string potential = s.count("potential") ? s.at("potential") : "gaussian";
    if (potential == "flat") {
        c.barrier.reset();
    } else if (potential == "gaussian") {
        double a = 1.0;
        num("barrier_width", a);
        if (!(a > 0)) throw ConfigError("barrier_width", "barrier_width must be positive");
        c.barrier = Barrier::gaussian(a);
    } else {
        throw ConfigError("potential",
                          "unknown potential '" + potential + "' (expected gaussian or flat)");
    }

    try {
        c.kernel = build_kernel(s);
    } catch (const std::invalid_argument& e) {
        throw ConfigError("lambda", e.what());
    }
    c.validate();
    return c;
}

}  // namespace

const std::vector<ConfigKey>& config_keys() {
    static const std::vector<ConfigKey> keys = [] {
        const SimulationConfig d;
        return std::vector<ConfigKey>{
            {"E_K", shortest(d.energy), "kinetic energy in units of the barrier height; p0 = sqrt(2 E_K)"},
            {"sigma0", "0.1*E_K", "momentum standard deviation of the initial packet"},
            {"tau", shortest(d.tau), "collision time"},
            {"hbar", shortest(d.hbar), "dimensionless Planck constant"},
            {"kernel", "coherent", "coherent | sech | exponential | quadratic"},
            {"lambda", "none", "correlation length (sech, exponential; quadratic via lambda2 = 1/(2 lambda^2))"},
            {"lambda1", "0", "quadratic kernel: first-order coefficient"},
            {"lambda2", "none", "quadratic kernel: curvature coefficient"},
            {"cutoff", "auto", "quadratic kernel: |eta| beyond which Delta = 0 (auto = 1/sqrt(lambda2), or inf)"},
            {"potential", "gaussian", "gaussian | flat"},
            {"barrier_width", shortest(d.barrier->a), "width a of V = exp(-x^2/a^2)"},
            {"x0", shortest(d.x0), "initial packet centre"},
            {"x_min", shortest(d.grid.x_min), "left edge of the periodic x domain"},
            {"x_max", shortest(d.grid.x_max), "right edge (excluded)"},
            {"n_x", std::to_string(d.grid.n_x), "position points (even)"},
            {"p_min", shortest(d.grid.p_min), "lowest momentum"},
            {"p_max", shortest(d.grid.p_max), "momentum upper bound (excluded)"},
            {"n_p", std::to_string(d.grid.n_p), "momentum points (even)"},
            {"dt", shortest(d.dt), "time step"},
            {"t_final", shortest(d.t_final), "end time (a whole number of steps)"},
            {"snapshot_times", join(d.snapshot_times), "comma-separated times for full-field output"},
            {"sample_every", std::to_string(d.sample_every), "steps between recorded moment samples"},
            {"boundary_threshold", shortest(d.boundary_threshold),
             "density mass near the x edges that triggers the boundary warning"},
        };
    }();
    return keys;
}

SimulationConfig parse_config(std::string_view text, const std::vector<std::string>& overrides) {
    Settings settings;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        assign(settings, text.substr(0, nl), false);
        if (nl == std::string_view::npos) break;
        text.remove_prefix(nl + 1);
    }
    for (const auto& o : overrides) assign(settings, o, true);
    return build(settings);
}

SimulationConfig load_config(const std::filesystem::path& path,
                             const std::vector<std::string>& overrides) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read config file " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str(), overrides);
}

std::string format_config(const SimulationConfig& c) {
    std::ostringstream out;
    const auto line = [&](const char* key, const std::string& value) {
        out << key << " = " << value << '\n';
    };
    line("E_K", shortest(c.energy));
    line("sigma0", shortest(c.sigma0));
    line("tau", shortest(c.tau));
    line("hbar", shortest(c.hbar));
    const auto& k = c.kernel;
    switch (k.kind) {
        case CorrelationKernel::Kind::Coherent:
            line("kernel", "coherent");
            break;
        case CorrelationKernel::Kind::Sech:
        case CorrelationKernel::Kind::Exponential:
            line("kernel", k.name());
            line("lambda", shortest(k.lambda));
            break;
        case CorrelationKernel::Kind::Quadratic:
            line("kernel", "quadratic");
            line("lambda1", shortest(k.lambda1));
            line("lambda2", shortest(k.lambda2));
            line("cutoff", shortest(k.cutoff));
            break;
    }
    if (c.barrier) {
        line("potential", "gaussian");
        line("barrier_width", shortest(c.barrier->a));
    } else {
        line("potential", "flat");
    }
    line("x0", shortest(c.x0));
    line("x_min", shortest(c.grid.x_min));
    line("x_max", shortest(c.grid.x_max));
    line("n_x", std::to_string(c.grid.n_x));
    line("p_min", shortest(c.grid.p_min));
    line("p_max", shortest(c.grid.p_max));
    line("n_p", std::to_string(c.grid.n_p));
    line("dt", shortest(c.dt));
    line("t_final", shortest(c.t_final));
    line("snapshot_times", join(c.snapshot_times));
    line("sample_every", std::to_string(c.sample_every));
    line("boundary_threshold", shortest(c.boundary_threshold));
    return out.str();
}

}  // namespace wigner
