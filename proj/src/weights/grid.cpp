#include "degenhyp/weights/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace degenhyp::weights {

GridSpec GridSpec::refined() const {
    GridSpec r = *this;
    r.t_decades *= 2;
    r.t_per_decade *= 2;
    r.t_uniform *= 2;
    r.xi_decades *= 2;
    r.xi_per_decade *= 2;
    return r;
}

std::string GridSpec::describe() const {
    std::ostringstream os;
    os << "t:[0," << T << "] " << t_decades << "dec x" << t_per_decade << "+" << t_uniform << "u; |xi|:[1,1e"
       << xi_decades << "] x" << xi_per_decade << "; dirs=" << xi_directions.size() << "; x=" << x_points.size();
    return os.str();
}

SymbolGrid build_grid(const GridSpec& spec) {
    if (spec.t_decades < 0 || spec.t_per_decade < 1 || spec.xi_decades < 0 || spec.xi_per_decade < 1 ||
        spec.t_uniform < 1)
        throw Error(ErrorKind::Validation, "grid densities must be positive");
    if (spec.xi_directions.empty() || spec.x_points.empty())
        throw Error(ErrorKind::Validation, "grid needs at least one direction and one x point");
    SymbolGrid g;
    g.t.push_back(0.0);
    const int nt = spec.t_decades * spec.t_per_decade;
    for (int i = 0; i <= nt; ++i)
        g.t.push_back(spec.T * std::pow(10.0, -spec.t_decades + static_cast<double>(i) / spec.t_per_decade));
    for (int i = 1; i <= spec.t_uniform; ++i) g.t.push_back(spec.T * i / spec.t_uniform);
    std::sort(g.t.begin(), g.t.end());
    g.t.erase(std::unique(g.t.begin(), g.t.end(),
                          [&](double a, double b) { return std::abs(a - b) <= 1e-14 * spec.T; }),
              g.t.end());
    g.t.back() = spec.T;

    const int nx = spec.xi_decades * spec.xi_per_decade;
    for (int i = 0; i <= nx; ++i) g.xi_radius.push_back(std::pow(10.0, static_cast<double>(i) / spec.xi_per_decade));
    for (const auto& d : spec.xi_directions) {
        const double n = d.norm();
        if (!(n > 0.0)) throw Error(ErrorKind::Validation, "zero xi direction");
        g.xi_directions.push_back(d / n);
    }
    g.x = spec.x_points;
    return g;
}

WeightBands weight_bands(const DegeneracySpec& spec, const Cutoff& cut, const SymbolGrid& grid) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    WeightBands b{{inf, -inf}, {inf, -inf}, {inf, -inf}, {inf, -inf}};
    auto fold = [](Band& band, double v) {
        band.lo = std::min(band.lo, v);
        band.hi = std::max(band.hi, v);
    };
    const int l = spec.l_star();
    for (double t : grid.t) {
        const auto d = degeneracy(spec, t);
        for (double r : grid.xi_radius) {
            const auto w = weight_pair(spec, cut, t, r);
            fold(b.g_ratio, w.g / w.g_bar);
            fold(b.h_ratio, w.h / w.h_bar);
            fold(b.gh_power, w.g_bar * std::pow(w.h_bar, l) / japanese(r));
            fold(b.g_over_h, w.g_bar / w.h_bar / (1.0 + d.Lambda * japanese(r)));
        }
    }
    return b;
}

} // namespace degenhyp::weights
