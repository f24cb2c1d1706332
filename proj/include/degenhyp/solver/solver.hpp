#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "degenhyp/solver/spectral.hpp"

namespace degenhyp::solver {

struct Tolerance {
    double rtol = 1e-10;
    double atol = 1e-12;
};

/// Spectral forcing F(t) (modes x components); empty means F = 0.
using Forcing = std::function<Matrix(double t)>;

struct SpectralTrajectory {
    std::vector<double> times;
    /// Coefficient arrays, rows = modes (FFT order), columns = components.
    std::vector<Matrix> states;
    std::shared_ptr<const SpectralOperator> op;
    Forcing F;
    double eps = 0.0;
    Tolerance tol;
    std::uint64_t seed = 0;
    std::string descriptor;
    std::size_t accepted_steps = 0;
    std::size_t rejected_steps = 0;

    /// D_t^j U at times[i] for j <= 2, formed from the equation
    /// (D_t U = A U + F; the second derivative differentiates A and F numerically).
    [[nodiscard]] Matrix time_derivative(std::size_t i, int j) const;
};

/// Integrates D_t U = A(t, x, D_x) U + F from t = 0 with the embedded
/// Runge-Kutta-Fehlberg 7(8) pair and returns the states at `t_out`.
/// Throws a stiffness error when the step size underflows and a divergence
/// error on non-finite values.
[[nodiscard]] SpectralTrajectory solve_cauchy(const symbols::SeparableSymbol& sys, const weights::DegeneracySpec& spec,
                                              const PeriodicGrid& grid, const Matrix& U0, const Forcing& F, double eps,
                                              const std::vector<double>& t_out, Tolerance tol);

} // namespace degenhyp::solver
