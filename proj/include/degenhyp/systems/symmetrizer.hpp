#pragma once

#include <utility>
#include <vector>

#include "degenhyp/systems/first_order_system.hpp"

namespace degenhyp::systems {

/// Relative root-gap tolerance: roots closer than this times max|mu| are
/// treated as coincident.
inline constexpr double kGapTol = 1e-6;

struct SymmetrizerPair {
    TimeMatrixFn M0;
    /// Optional; when empty the Sylvester choice with zero diagonal blocks is used.
    MatrixFn M1;
    std::vector<int> block_sizes;
};

/// Rows of the result are unit left eigenvectors of A0, grouped by the root
/// list. Simple roots are normalized so the largest entry is real positive;
/// repeated roots get an orthonormal basis of their left eigenspace.
[[nodiscard]] Matrix symmetrizer_at(const Matrix& A0, const std::vector<double>& mu, const std::vector<int>& mult);

/// Builds M0 from the declared roots and checks it at the sample points
/// (root gaps, diagonalizability, M0 A0 M0^{-1} = diag(mu_h I)).
[[nodiscard]] SymmetrizerPair symmetrizer_from_roots(const FirstOrderSystem& sys, const std::vector<double>& t_samples,
                                                     const std::vector<Vec>& x_samples,
                                                     const std::vector<Vec>& xi_samples);

/// Solves T F - E T = G via the Kronecker form (F^T (x) I - I (x) E) vec T = vec G.
[[nodiscard]] Matrix solve_sylvester(const Matrix& E, const Matrix& F, const Matrix& G);

/// P1 with zero diagonal blocks such that the off-diagonal blocks of
/// B1 + [P1, B0] vanish, where B0 = diag(mu_j I_{N_j}).
[[nodiscard]] Matrix sylvester_block_offdiag(const std::vector<std::pair<double, int>>& blocks, const Matrix& B1);

struct ConjugatedPair {
    Matrix B0;
    Matrix B1;
    /// M1 M0^{-1}, either supplied or the Sylvester solution.
    Matrix K;
    /// Re(B1 + [K, B0]).
    Matrix effective;
};

/// Everything evaluated at t = 0.
[[nodiscard]] ConjugatedPair conjugated_pair(const FirstOrderSystem& sys, const SymmetrizerPair& pair, const Vec& x,
                                             const Vec& xi_hat);

} // namespace degenhyp::systems
