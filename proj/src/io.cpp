#include "wigner/io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

#include "wigner/errors.hpp"

namespace wigner {

namespace {

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) throw IoError("write to " + path.string() + " failed");
}

std::uint64_t to_little(std::uint64_t v) {
    if constexpr (std::endian::native == std::endian::big) {
        std::uint64_t r = 0;
        for (int b = 0; b < 8; ++b) r = (r << 8) | ((v >> (8 * b)) & 0xffu);
        return r;
    }
    return v;
}

}  // namespace

void write_text(const std::filesystem::path& path, const std::string& text) {
    auto out = open_out(path);
    out << text;
    finish(out, path);
}

std::string format_moments_csv(const MomentSeries& series) {
    std::string s = "t,x_avg,p_avg,sigma20,sigma02,sigma11,norm,energy\n";
    for (const auto& r : series) {
        for (double v : {r.t, r.x_avg, r.p_avg, r.sigma20, r.sigma02, r.sigma11, r.norm}) {
            s += g17(v);
            s += ',';
        }
        s += g17(r.energy);
        s += '\n';
    }
    return s;
}

void write_moments_csv(const MomentSeries& series, const std::filesystem::path& path) {
    write_text(path, format_moments_csv(series));
}

void write_density_csv(const WignerField& field, const std::filesystem::path& path) {
    const auto n = density(field);
    std::string s = "x,n\n";
    for (int i = 0; i < field.grid.n_x(); ++i) s += g17(field.grid.x(i)) + ',' + g17(n[i]) + '\n';
    write_text(path, s);
}

void write_snapshot(const WignerField& field, const std::filesystem::path& path) {
    const auto& g = field.grid;
    if (field.values.size() != g.size())
        throw std::invalid_argument("field size does not match its grid");
    auto out = open_out(path);
    out << "WIG1 " << g.n_x() << ' ' << g.n_p() << ' ' << g17(g.x_min()) << ' ' << g17(g.x_max())
        << ' ' << g17(g.p_min()) << ' ' << g17(g.p_max()) << ' ' << g17(g.hbar()) << ' '
        << g17(field.time) << '\n';
    std::vector<std::uint64_t> raw(field.values.size());
    for (std::size_t k = 0; k < raw.size(); ++k)
        raw[k] = to_little(std::bit_cast<std::uint64_t>(field.values[k]));
    out.write(reinterpret_cast<const char*>(raw.data()),
              static_cast<std::streamsize>(raw.size() * sizeof(std::uint64_t)));
    finish(out, path);
}

WignerField read_snapshot(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string() + " for reading");
    std::string header;
    if (!std::getline(in, header)) throw IoError(path.string() + ": missing snapshot header");
    std::istringstream h(header);
    std::string magic;
    int nx = 0, np = 0;
    double x_min, x_max, p_min, p_max, hbar, t;
    if (!(h >> magic >> nx >> np >> x_min >> x_max >> p_min >> p_max >> hbar >> t) ||
        magic != "WIG1")
        throw IoError(path.string() + ": malformed snapshot header");

    PhaseSpaceGrid grid;
    try {
        grid = build_grid(x_min, x_max, nx, p_min, p_max, np, hbar);
    } catch (const std::invalid_argument& e) {
        throw IoError(path.string() + ": " + e.what());
    }
    WignerField field(grid, t);
    std::vector<std::uint64_t> raw(grid.size());
    in.read(reinterpret_cast<char*>(raw.data()),
            static_cast<std::streamsize>(raw.size() * sizeof(std::uint64_t)));
    if (in.gcount() != static_cast<std::streamsize>(raw.size() * sizeof(std::uint64_t)))
        throw IoError(path.string() + ": truncated snapshot data");
    for (std::size_t k = 0; k < raw.size(); ++k)
        field.values[k] = std::bit_cast<double>(to_little(raw[k]));
    return field;
}

void write_heatmap(const WignerField& field, const std::filesystem::path& path) {
    const auto& g = field.grid;
    double s = max_abs(field);
    if (!(s > 0)) s = 1e-300;

    const int w = g.n_x(), h = g.n_p();
    std::vector<unsigned char> pixels(static_cast<std::size_t>(w) * h * 3);
    for (int row = 0; row < h; ++row) {
        const int j = h - 1 - row;
        for (int i = 0; i < w; ++i) {
            const double u = std::clamp(field.at(i, j) / s, -1.0, 1.0);
            const auto fade = static_cast<unsigned char>(std::lround(255.0 * (1.0 - std::abs(u))));
            unsigned char* px = &pixels[(static_cast<std::size_t>(row) * w + i) * 3];
            if (u >= 0) {
                px[0] = 255, px[1] = fade, px[2] = fade;
            } else {
                px[0] = fade, px[1] = fade, px[2] = 255;
            }
        }
    }
    auto out = open_out(path);
    out << "P6\n" << w << ' ' << h << "\n255\n";
    out.write(reinterpret_cast<const char*>(pixels.data()),
              static_cast<std::streamsize>(pixels.size()));
    finish(out, path);

    write_text(path.string() + ".scale.txt",
               "min " + g17(-s) + "\ncenter 0\nmax " + g17(s) + "\ntime " + g17(field.time) + "\n");
}

}  // namespace wigner
