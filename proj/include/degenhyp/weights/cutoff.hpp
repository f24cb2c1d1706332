#pragma once

namespace degenhyp::weights {

/// Smooth transition chi with chi(s) = 0 for s <= 1/2 and chi(s) = 1 for s >= 1.
///
/// Concretely chi(s) = psi(2s - 1), where
///   psi(u) = e^{-1/u} / (e^{-1/u} + e^{-1/(1-u)})   on (0, 1).
/// Derivatives up to `max_derivative()` are exact (Taylor-jet arithmetic),
/// not finite differences.
class Cutoff {
public:
    explicit Cutoff(int max_derivative = 4);

    [[nodiscard]] double operator()(double s) const noexcept;

    /// d^order chi / ds^order at s. Throws a domain error for
    /// order > max_derivative().
    [[nodiscard]] double derivative(double s, int order) const;

    [[nodiscard]] int max_derivative() const noexcept { return max_derivative_; }

private:
    int max_derivative_;
};

} // namespace degenhyp::weights
