#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "degenhyp/symbolcalc/separable.hpp"
#include "degenhyp/symbolcalc/structured_symbol.hpp"

namespace degenhyp::systems {

using TimeMatrixFn = std::function<Matrix(double t, const Vec& x, const Vec& xi_hat)>;
using MatrixFn = std::function<Matrix(const Vec& x, const Vec& xi_hat)>;
using RootFn = std::function<double(double t, const Vec& x, const Vec& xi_hat)>;

struct Root {
    RootFn mu;
    int multiplicity = 1;
};

/// A(t,x,xi) = chi+ (lambda(t)|xi| A0(t,x,xi_hat) - i l t^{-1} A1(x,xi_hat)) + A2(t,x,xi).
struct FirstOrderSystem {
    int N = 0;
    weights::DegeneracySpec spec;
    TimeMatrixFn A0;
    MatrixFn A1;
    /// Optional remainder.
    symbols::SymbolFn A2;
    symbols::SymbolOrders A2_orders{0.0, 0.0, 0};
    /// Distinct roots of A0 in a fixed order, with multiplicities.
    std::vector<Root> roots;
    /// Full 1-D symbol as a finite sum of separable terms, when available.
    std::optional<symbols::SeparableSymbol> separable;
    std::string name;

    /// Checks sizes and that the multiplicities add up to N.
    void validate() const;
    [[nodiscard]] std::vector<int> block_sizes() const;
    [[nodiscard]] std::vector<double> root_values(double t, const Vec& x, const Vec& xi_hat) const;
    [[nodiscard]] Matrix full_symbol(const weights::Cutoff& cut, double t, const Vec& x, const Vec& xi) const;
    /// The structured form with a0 = |zeta| A0, a1 = -i l A1 and orders (1, 1).
    [[nodiscard]] symbols::StructuredSymbol structured(const weights::Cutoff& cut) const;
};

/// Roots taken from the sorted real eigenvalues of A0, grouped by the given
/// multiplicities (each root is the mean of its group).
[[nodiscard]] std::vector<Root> eigen_roots(const TimeMatrixFn& A0, const std::vector<int>& multiplicities);

/// The 2x2 reduction of u_tt - t^2 u_xx - (4k+1) u_x = 0: A0 = [[0,1],[1,0]],
/// A1 = [[1,0],[b,0]] with b = (4k+1) sgn xi, l = 1.
[[nodiscard]] FirstOrderSystem qi_system(double k, double T = 1.0);

/// D_t U = t^l D_x A0 U: A0(xi_hat) = xi_hat A0, A1 = 0, no cutoff.
[[nodiscard]] FirstOrderSystem differential_system(const Matrix& A0, int l_star, double T = 1.0);

/// A0 = 0 with a single root of multiplicity N and A1(x) = a(x).
[[nodiscard]] FirstOrderSystem single_block_system(std::function<Matrix(double x)> a, int N, int l_star,
                                                   double T = 1.0);

/// Deterministic unit covector samples: {+1, -1} in 1-D, 64 points on the
/// circle (2-D) or a Fibonacci sphere (3-D).
[[nodiscard]] std::vector<Vec> default_xi_samples(int dim);

} // namespace degenhyp::systems
