#pragma once

#include <vector>

#include "degenhyp/reduction/scalar_operator.hpp"
#include "degenhyp/symbolcalc/separable.hpp"
#include "degenhyp/systems/delta_bound.hpp"

namespace degenhyp::reduction {

/// p(tau) = tau^m + sum_j p_j tau^j and q(tau) = sum_{j <= m-2} q_j tau^j.
struct ReducedSymbols {
    CVector p;  // p_0 .. p_{m-1}
    CVector q;  // q_0 .. q_{m-2}
};

/// p_j = sum_{|alpha| = m-j} a_{j alpha}(t,x) xi_hat^alpha,
/// q_j = (i/l) sum_{|alpha| = m-j-1} a_{j alpha}(0,x) xi_hat^alpha.
[[nodiscard]] ReducedSymbols reduced_symbols(const ScalarOperator& op, const Vec& x, const Vec& xi_hat,
                                             double t = 0.0);

/// Real roots of the monic polynomial with lower coefficients p, ascending.
/// Throws a strict-hyperbolicity error for complex or coincident roots.
[[nodiscard]] std::vector<double> strict_roots(const CVector& p);

/// A0 = companion(p), A1 = diag(m-1, ..., 0) with last row (-q_0, ..., -q_{m-2}, 0).
/// In 1-D the exact first-order form (companion_full_symbol) is attached.
[[nodiscard]] systems::FirstOrderSystem companion_system(const ScalarOperator& op);

/// Exact 1-D first-order form for U_i = g^{m-1-i} D_t^i u, i = 0..m-1.
[[nodiscard]] symbols::SeparableSymbol companion_full_symbol(const ScalarOperator& op, const weights::Cutoff& cut);

struct Vandermonde {
    Matrix M0_inv;  // (M0^{-1})_{ih} = mu_h^i
    Matrix M0;      // closed form with denominator p'(mu_h)
};

[[nodiscard]] Vandermonde vandermonde_symmetrizer(const std::vector<double>& roots, const CVector& p);

/// delta(x) = max over roots and covectors of -((tau/2) p'' + Re q) / p' at tau = mu_h(0,x,xi);
/// loss = beta delta l.
[[nodiscard]] systems::DeltaBound delta_bound_scalar(const ScalarOperator& op, const std::vector<Vec>& x_grid,
                                                     const std::vector<Vec>& xi_samples);

/// max |delta_sys - delta_scalar - (m-1)| over the x grid, with delta_sys from
/// the Sylvester pipeline on the companion system.
[[nodiscard]] double cross_validate(const ScalarOperator& op, const std::vector<Vec>& x_grid,
                                    const std::vector<Vec>& xi_samples);

} // namespace degenhyp::reduction
