#pragma once

#include <string>
#include <vector>

#include "degenhyp/systems/symmetrizer.hpp"

namespace degenhyp::systems {

/// delta(x) with the attaining block and covector, and loss(x) = beta delta(x) l.
/// `block_max[i][j]` is the largest recorded eigenvalue of block j at x[i].
struct DeltaBound {
    std::vector<Vec> x;
    std::vector<double> delta;
    std::vector<double> loss;
    std::vector<int> argmax_block;
    std::vector<Vec> argmax_xi;
    std::vector<std::vector<double>> block_max;

    [[nodiscard]] double delta_max() const;
    [[nodiscard]] double delta_min() const;
    /// Columns x, delta, loss, argmax_block, argmax_xi; vector entries are ';'-joined.
    [[nodiscard]] std::string csv() const;
};

/// delta(x) = max over blocks and covector samples of lambda_max(Re B1_jj)
/// after the off-diagonal blocks are removed (or of the whole effective
/// matrix when a supplied M1 leaves off-diagonal blocks).
[[nodiscard]] DeltaBound delta_bound_system(const FirstOrderSystem& sys, const SymmetrizerPair& pair,
                                            const std::vector<Vec>& x_grid, const std::vector<Vec>& xi_samples);

/// Strictly hyperbolic shortcut: max_j sup Re(M0 A1 M0^{-1})_jj at x.
[[nodiscard]] double strict_diagonal_delta(const FirstOrderSystem& sys, const SymmetrizerPair& pair, const Vec& x,
                                           const std::vector<Vec>& xi_samples);

/// The 2N system for the unknowns (g h^l U, D_t(...)) with principal and
/// secondary parts block-diagonal copies of the original. Needs a separable
/// symbol.
[[nodiscard]] FirstOrderSystem order_raised_system(const FirstOrderSystem& sys, const weights::Cutoff& cut);

/// Numerical secondary symbol of a separable 1-D system:
/// t (A(t, x, zeta xi_hat / t^{l+1}) - lambda |xi| A0) for small t and large zeta,
/// which tends to -i l A1(x, xi_hat) with error O(t + 1/zeta).
[[nodiscard]] Matrix secondary_probe(const FirstOrderSystem& sys, double x, double xi_hat, double t = 1e-4,
                                     double zeta = 1e4);

} // namespace degenhyp::systems
