#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "degenhyp/reduction/reduction.hpp"
#include "degenhyp/solver/solver.hpp"

namespace degenhyp::solver {

/// A solvable 1-D problem: the spectral system plus how scalar data enters it
/// and how the quantity whose regularity is measured is read back.
struct Problem {
    std::string name;
    std::vector<std::pair<std::string, double>> params;
    weights::DegeneracySpec spec;
    symbols::SeparableSymbol symbol;
    /// m for scalar equations reduced to U_i = g^{m-1-i} D_t^i u; 0 for systems.
    int scalar_order = 0;
    std::optional<reduction::ScalarOperator> op;
    std::optional<systems::FirstOrderSystem> sys;

    /// Scalar equations: u(0) = phi, D_t^j u(0) = 0 (j >= 1). Systems: phi in component 0.
    [[nodiscard]] Matrix initial_state(const PeriodicGrid& grid, const CVector& phi_hat) const;
    /// Scalar equations: u = U_0 / g^{m-1}. Systems: U itself.
    [[nodiscard]] Matrix observable(const PeriodicGrid& grid, double t, const Matrix& U) const;
    /// Largest loss beta delta l predicted by the closed-form / Sylvester
    /// analysis over a few x samples; NaN when no analysis object is attached.
    [[nodiscard]] double predicted_loss() const;
};

[[nodiscard]] Problem scalar_problem(const reduction::ScalarOperator& op);
[[nodiscard]] Problem system_problem(const systems::FirstOrderSystem& sys);

[[nodiscard]] Problem qi_problem(double k, double T = 1.0);
/// Pure degenerate wave D_t^2 - t^{2l} D_x^2 (the k = -1/4 member of the qi family when l = 1).
[[nodiscard]] Problem wave_problem(int l_star, double T = 1.0);
[[nodiscard]] Problem transport_problem(double a, int l_star, double T = 1.0);
/// D_t U = t^l D_x A0 U with Hermitian A0 (default [[0,1],[1,0]]).
[[nodiscard]] Problem differential_system_problem(const Matrix& A0, int l_star, double T = 1.0);

/// Diagonalized qi system with the secondary part shifted to be dissipative:
/// A = chi+ (t|xi| diag(-1,1) - i (t+eps)^{-1} (B - delta I)) + c g^{-1} h^2 E_12,
/// B = diag(1-b, 1+b)/2, b = (4k+1) sgn xi, delta = (1 + |4k+1|)/2.
[[nodiscard]] Problem qi_energy_problem(double k, double c = 1.0, double T = 1.0);

/// D_t U = t xi [[0,1],[1,0]] U: a Hermitian multiplier, so |U(t)| is conserved.
[[nodiscard]] Problem hermitian_test_problem(double T = 1.0);

/// c_0 = 1, c_{j+1} = 2 (k - j) c_j / ((j+1)(2j+1)).
[[nodiscard]] std::vector<double> qi_coefficients(int k);

/// Exact solution of u_tt - t^2 u_xx - (4k+1) u_x = 0, u(0) = phi, u_t(0) = 0:
/// u_hat = sum_j c_j t^{2j} (i xi)^j e^{i xi t^2 / 2} phi_hat.
[[nodiscard]] CVector qi_exact(int k, const CVector& phi_hat, double t, const PeriodicGrid& grid);

/// |phi_hat(xi)| = <xi>^{-sigma-1/2} with seeded uniform phases, Hermitian
/// symmetric (real phi), phi_hat(0) = 1, Nyquist mode zero.
[[nodiscard]] CVector make_data(const PeriodicGrid& grid, double sigma, std::uint64_t seed);

/// Real band-limited data: |phi_hat(xi)| = <xi>^{-2} for |xi| <= k_max, zero beyond.
[[nodiscard]] CVector band_limited_data(const PeriodicGrid& grid, int k_max, std::uint64_t seed);

} // namespace degenhyp::solver
