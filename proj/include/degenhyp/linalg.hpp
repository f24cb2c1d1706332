#pragma once

#include <vector>

#include "degenhyp/common.hpp"

namespace degenhyp::linalg {

/// Re Q = (Q + Q*)/2
[[nodiscard]] Matrix hermitian_part(const Matrix& q);

[[nodiscard]] Matrix commutator(const Matrix& a, const Matrix& b);

/// Largest eigenvalue of the Hermitian part of `q`.
[[nodiscard]] double lambda_max_re(const Matrix& q);

/// Companion matrix of the monic polynomial tau^m + c[m-1] tau^{m-1} + ... + c[0]:
/// ones on the superdiagonal, last row (-c[0], ..., -c[m-1]).
[[nodiscard]] Matrix companion(const CVector& coeffs);

/// Roots of the monic polynomial with lower coefficients `coeffs`, via the
/// companion eigensolve. Unsorted.
[[nodiscard]] CVector polynomial_roots(const CVector& coeffs);

/// p(tau), p'(tau), p''(tau) for monic p with lower coefficients `coeffs`.
struct PolyEval {
    cplx value;
    cplx d1;
    cplx d2;
};
[[nodiscard]] PolyEval eval_monic(const CVector& coeffs, cplx tau);

/// Offsets of the diagonal blocks for multiplicities `sizes`.
[[nodiscard]] std::vector<int> block_offsets(const std::vector<int>& sizes);

/// Frobenius norm of everything outside the diagonal blocks.
[[nodiscard]] double offdiag_block_norm(const Matrix& m, const std::vector<int>& sizes);

} // namespace degenhyp::linalg
