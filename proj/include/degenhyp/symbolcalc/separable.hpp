#pragma once

#include <functional>
#include <span>
#include <vector>

#include "degenhyp/common.hpp"

namespace degenhyp::symbols {

/// How a term is treated by the epsilon regularization of the solver:
/// secondary terms get t/(t+eps), remainders (t+<xi>^{-beta})/(t+<xi>^{-beta}+eps).
enum class TermRole { Principal, Secondary, Remainder };

/// Fills out[k] = m(t, xi[k]) for a batch of frequencies.
using BatchMultiplier = std::function<void(double t, std::span<const double> xi, std::span<cplx> out)>;

/// Wraps a pointwise multiplier m(t, xi) as a batch multiplier.
[[nodiscard]] BatchMultiplier pointwise(std::function<cplx(double t, double xi)> m);

/// One term a(x) m(t, xi) of a 1-D separable symbol; a(x) is an N x N matrix.
struct SeparableTerm {
    Matrix coeff;
    /// When set, overrides `coeff` with an x-dependent matrix.
    std::function<Matrix(double x)> coeff_x;
    BatchMultiplier multiplier;
    TermRole role = TermRole::Principal;

    [[nodiscard]] bool x_dependent() const noexcept { return static_cast<bool>(coeff_x); }
    [[nodiscard]] Matrix coefficient(double x) const { return coeff_x ? coeff_x(x) : coeff; }
};

/// Finite sum of separable terms; the left-quantized operator is
/// sum_i a_i(x) m_i(t, D_x).
struct SeparableSymbol {
    int N = 0;
    std::vector<SeparableTerm> terms;

    [[nodiscard]] Matrix evaluate(double t, double x, double xi) const;
    /// Sum over the terms with the given role only.
    [[nodiscard]] Matrix evaluate(double t, double x, double xi, TermRole role) const;
    [[nodiscard]] bool x_dependent() const;
};

} // namespace degenhyp::symbols
