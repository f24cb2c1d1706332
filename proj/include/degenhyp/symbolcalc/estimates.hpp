#pragma once

#include <string>
#include <vector>

#include "degenhyp/symbolcalc/structured_symbol.hpp"
#include "degenhyp/weights/grid.hpp"

namespace degenhyp::symbols {

/// Highest derivative orders checked: d_t^j with j <= J, |alpha| <= A, |beta| <= B.
struct MaxOrders {
    int J = 1;
    int A = 0;
    int B = 1;
};

struct EstimateEntry {
    int j = 0;
    std::vector<int> alpha;
    std::vector<int> beta;
    double C = 0.0;
    double C_refined = 0.0;
    bool pass = false;
};

struct EstimateReport {
    std::vector<EstimateEntry> entries;
    bool pass = false;
    std::string grid;

    /// Columns j, alpha, beta, C, verdict. Multi-indices are ';'-joined.
    [[nodiscard]] std::string csv() const;
};

/// Constants C_{j alpha beta} = sup |d_t^j d_x^alpha d_xi^beta a| / weight over
/// the grid, with weight = sum over `orders` of
/// g_bar^m h_bar^{eta-m+j} <xi>^{-|beta|} (1 + |log h_bar|)^{b+|alpha|}.
/// An entry passes when the constant on grid.refined() is at most 10% larger.
[[nodiscard]] EstimateReport estimate_constants(const SymbolFn& a, const std::vector<SymbolOrders>& orders,
                                                const weights::DegeneracySpec& spec, const weights::GridSpec& grid,
                                                MaxOrders max_orders);
[[nodiscard]] EstimateReport estimate_constants(const SymbolFn& a, const SymbolOrders& orders,
                                                const weights::DegeneracySpec& spec, const weights::GridSpec& grid,
                                                MaxOrders max_orders);

struct EllipticityMargin {
    double c1 = 0.0;
    bool pass = false;
};

/// c1 = inf |det a| / (g_bar^m h_bar^{eta-m})^N over the grid.
[[nodiscard]] EllipticityMargin ellipticity_margin(const SymbolFn& a, const SymbolOrders& orders,
                                                   const weights::DegeneracySpec& spec, const weights::GridSpec& grid,
                                                   double tolerance = 1e-8);

} // namespace degenhyp::symbols
