#pragma once

// Output encodings. Every writer throws IoError naming the path on failure.

#include <filesystem>
#include <span>
#include <string>

#include "wigner/grid.hpp"
#include "wigner/observables.hpp"

namespace wigner {

/// Header `t,x_avg,p_avg,sigma20,sigma02,sigma11,norm,energy`, one line per
/// record, numbers with 17 significant digits.
std::string format_moments_csv(const MomentSeries& series);
void write_moments_csv(const MomentSeries& series, const std::filesystem::path& path);

/// Columns `x,n` for the density of `field`.
void write_density_csv(const WignerField& field, const std::filesystem::path& path);

/**
 * Binary field dump: the ASCII line
 *   WIG1 n_x n_p x_min x_max p_min p_max hbar t
 * followed by n_x*n_p row-major IEEE-754 doubles in little-endian order.
 */
void write_snapshot(const WignerField& field, const std::filesystem::path& path);
WignerField read_snapshot(const std::filesystem::path& path);

/**
 * Binary PPM (P6), x along the width and p along the height with p_max at
 * the top. Colours run blue (negative) through white (zero) to red
 * (positive) on the symmetric range [-s, s], s = max|f|; an all-zero field
 * uses s = 1e-300 and renders white. The range is written to
 * `<path>.scale.txt`.
 */
void write_heatmap(const WignerField& field, const std::filesystem::path& path);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace wigner
