#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "degenhyp/solver/problems.hpp"

namespace degenhyp::solver {

/// sqrt( sum_{j<=s} int_0^T || g^{s-j} h^{(s+delta) l} D_t^j U ||^2 dt ),
/// trapezoid in time over the stored output times. s <= 2.
[[nodiscard]] double weighted_norm(const SpectralTrajectory& traj, int s, double delta);

/// q(t, xi) >= 0 used for the conjugation W = exp(-p(t, D)) U, p = int_0^t q.
using QMultiplier = std::function<double(double t, double xi)>;

/// C g^{-1} h^2.
[[nodiscard]] QMultiplier default_q(const weights::DegeneracySpec& spec, const weights::Cutoff& cut, double C);

struct EnergyRatio {
    double max_ratio = 0.0;
    double max_unconjugated = 0.0;
};

/// max_t ||W(t)||^2 / (||U0||^2 + int_0^t ||exp(-p) F||^2). The forcing
/// integral uses the trapezoid rule on the trajectory's output times, p uses
/// adaptive Gauss-Kronrod between consecutive output times. Empty q means q = 0.
[[nodiscard]] EnergyRatio energy_ratio(const SpectralTrajectory& traj, const Forcing& F, const QMultiplier& q);

struct DecayFit {
    double sigma_hat = 0.0;
    double r2 = 0.0;
    int shells = 0;
};

/// Fits log(shell RMS) against log<k> over integer shells lo <= k <= hi;
/// sigma_hat = -slope - 1/2. The RMS runs over +-k and all columns.
[[nodiscard]] DecayFit decay_exponent(const Matrix& state, int lo, int hi);

struct LossOptions {
    int n_modes = 512;
    Tolerance tol{1e-10, 1e-300};
    double eps = 0.0;
    /// Fit band; 0 selects [n/32, n/8].
    int band_lo = 0;
    int band_hi = 0;
};

struct LossResult {
    double loss = 0.0;
    double sigma_hat = 0.0;
    double r2 = 0.0;
    int band_lo = 0;
    int band_hi = 0;
    std::size_t steps = 0;
};

/// Solves from data with |phi_hat| = <xi>^{-sigma-1/2} and reports
/// sigma - sigma_hat(t_probe).
[[nodiscard]] LossResult empirical_loss(const Problem& problem, double sigma, double t_probe, std::uint64_t seed,
                                        const LossOptions& opts = {});

/// Rows "t,component,shell,magnitude" (shell RMS over +-k) for every stored time.
[[nodiscard]] std::string trajectory_csv(const SpectralTrajectory& traj);

} // namespace degenhyp::solver
