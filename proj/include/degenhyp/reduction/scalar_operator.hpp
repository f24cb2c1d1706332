#pragma once

#include <functional>
#include <string>
#include <vector>

#include "degenhyp/common.hpp"
#include "degenhyp/weights/weights.hpp"

namespace degenhyp::reduction {

/// Separable coefficient c(t) b(x). Empty functions mean 1.
struct CoefficientPart {
    std::function<cplx(double t)> time;
    std::function<cplx(const Vec& x)> space;

    [[nodiscard]] cplx operator()(double t, const Vec& x) const {
        return (time ? time(t) : cplx(1.0)) * (space ? space(x) : cplx(1.0));
    }
    [[nodiscard]] bool x_dependent() const noexcept { return static_cast<bool>(space); }
};

[[nodiscard]] CoefficientPart constant(cplx c);

/// a_{j alpha}(t,x) t^{(j + (l+1)|alpha| - m)^+} D_t^j D_x^alpha, with
/// a_{j alpha} = sum of separable parts.
struct OperatorTerm {
    int j = 0;
    std::vector<int> alpha;
    std::vector<CoefficientPart> parts;

    [[nodiscard]] int order_x() const;
    [[nodiscard]] cplx coefficient(double t, const Vec& x) const;
    /// xi_hat^alpha
    [[nodiscard]] double monomial(const Vec& xi) const;
};

/// L = D_t^m + sum of terms, with Levi exponents attached per term.
struct ScalarOperator {
    int m = 1;
    weights::DegeneracySpec spec;
    int dim = 1;
    std::vector<OperatorTerm> terms;
    std::string name;

    /// Checks j < m, j + |alpha| <= m and multi-index dimensions.
    void validate() const;
    [[nodiscard]] int levi_exponent(const OperatorTerm& term) const;
};

/// D_t^2 - t^2 D_x^2 + i(4k+1) D_x, i.e. u_tt - t^2 u_xx - (4k+1) u_x = 0.
[[nodiscard]] ScalarOperator qi_operator(double k, double T = 1.0);

/// D_t^2 - t^{2l} D_x^2 + i c t^{l-1} D_x; c = 0 is the pure degenerate wave.
[[nodiscard]] ScalarOperator wave_operator(int l_star, double c = 0.0, double T = 1.0);

/// D_t - t^l a D_x.
[[nodiscard]] ScalarOperator transport_operator(double a, int l_star, double T = 1.0);

} // namespace degenhyp::reduction
