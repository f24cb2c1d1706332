#pragma once

#include <functional>
#include <optional>

#include "degenhyp/common.hpp"
#include "degenhyp/weights/weights.hpp"

namespace degenhyp::symbols {

/// Matrix-valued symbol a(t, x, xi).
using SymbolFn = std::function<Matrix(double t, const Vec& x, const Vec& xi)>;

/// Order pair (m, eta) of the class with weight g^m h^{eta-m}; `log_power`
/// adds the (1 + |log h_bar|)^{b + |alpha|} factor.
struct SymbolOrders {
    double m = 0.0;
    double eta = 0.0;
    int log_power = 0;
};

/// a(t,x,xi) = chi+ t^{-eta} (a0(t,x,t^{l+1} xi) + a1(t,x,t^{l+1} xi)) + a2(t,x,xi)
/// with a0 homogeneous of degree m and a1 of degree m-1 in the third slot.
/// Empty a1 / a2 mean zero.
struct StructuredSymbol {
    int N = 1;
    weights::DegeneracySpec spec;
    weights::Cutoff cut;
    SymbolFn a0;
    SymbolFn a1;
    SymbolFn a2;
    SymbolOrders orders;
    /// Declared class of a2; informational only.
    SymbolOrders remainder_orders;

    [[nodiscard]] Matrix operator()(double t, const Vec& x, const Vec& xi) const;
    /// chi+ t^{-eta}(a0 + a1) without the remainder.
    [[nodiscard]] Matrix leading(double t, const Vec& x, const Vec& xi) const;
    [[nodiscard]] Matrix eval_a1(double t, const Vec& x, const Vec& zeta) const;
};

struct PrincipalSymbols {
    /// Empty at t = 0 when (l+1)m < eta (no finite limit).
    std::optional<Matrix> sigma_m;
    Matrix sigma_tilde;
    Matrix sigma_tilde_top;
};

[[nodiscard]] PrincipalSymbols principal_symbols(const StructuredSymbol& sym, double t, const Vec& x, const Vec& xi);

/// Leading-order product: a0 b0, a0 b1 + a1 b0, orders added. The remainder is
/// chosen so that the full value equals the pointwise product a b.
[[nodiscard]] StructuredSymbol compose_leading(const StructuredSymbol& a, const StructuredSymbol& b);

/// Pointwise conjugate transpose of every part.
[[nodiscard]] StructuredSymbol adjoint(const StructuredSymbol& a);

/// The N x N identity as a structured symbol of orders (0, 0).
[[nodiscard]] StructuredSymbol identity_symbol(const weights::DegeneracySpec& spec, const weights::Cutoff& cut, int N);

/// Scalar g^m h^{eta-m}: a0 = |zeta|^m, a1 = 0, remainder = exact value minus leading part.
[[nodiscard]] StructuredSymbol weight_power_symbol(const weights::DegeneracySpec& spec, const weights::Cutoff& cut,
                                                   double m, double eta);

/// Check a0(t,x,s zeta) = s^m a0(t,x,zeta) (and a1 with m-1); returns the
/// largest relative defect over the supplied points and scales.
[[nodiscard]] double homogeneity_defect(const StructuredSymbol& sym, double t, const Vec& x, const Vec& zeta,
                                        double s);

} // namespace degenhyp::symbols
