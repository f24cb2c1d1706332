#pragma once

#include <string>
#include <vector>

#include "degenhyp/weights/weights.hpp"

namespace degenhyp::weights {

/// Sampling recipe for (t, x, xi) sweeps. Frequencies are excised to |xi| >= 1
/// and log-spaced; times are geometric toward t = 0 plus a uniform layer.
struct GridSpec {
    double T = 1.0;
    int t_decades = 4;
    int t_per_decade = 12;
    int t_uniform = 16;
    int xi_decades = 4;
    int xi_per_decade = 12;
    std::vector<Vec> xi_directions{vec1(1.0), vec1(-1.0)};
    std::vector<Vec> x_points{vec1(0.0)};

    /// Twice the decades and twice the density on both axes.
    [[nodiscard]] GridSpec refined() const;
    [[nodiscard]] std::string describe() const;
};

struct SymbolGrid {
    std::vector<double> t;
    std::vector<double> xi_radius;
    std::vector<Vec> xi_directions;
    std::vector<Vec> x;
};

[[nodiscard]] SymbolGrid build_grid(const GridSpec& spec);

struct Band {
    double lo;
    double hi;
};

struct WeightBands {
    Band g_ratio;        // g / g_bar
    Band h_ratio;        // h / h_bar
    Band gh_power;       // g_bar h_bar^l / <xi>
    Band g_over_h;       // g_bar h_bar^{-1} / (1 + Lambda <xi>)
};

/// Inf/sup of the weight ratios over the (t, |xi|) part of the grid.
[[nodiscard]] WeightBands weight_bands(const DegeneracySpec& spec, const Cutoff& cut, const SymbolGrid& grid);

} // namespace degenhyp::weights
