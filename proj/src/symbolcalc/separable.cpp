#include "degenhyp/symbolcalc/separable.hpp"

namespace degenhyp::symbols {

BatchMultiplier pointwise(std::function<cplx(double t, double xi)> m) {
    return [m = std::move(m)](double t, std::span<const double> xi, std::span<cplx> out) {
        for (std::size_t k = 0; k < xi.size(); ++k) out[k] = m(t, xi[k]);
    };
}

Matrix SeparableSymbol::evaluate(double t, double x, double xi) const {
    Matrix v = Matrix::Zero(N, N);
    cplx m;
    for (const auto& term : terms) {
        term.multiplier(t, std::span<const double>(&xi, 1), std::span<cplx>(&m, 1));
        v += m * term.coefficient(x);
    }
    return v;
}

Matrix SeparableSymbol::evaluate(double t, double x, double xi, TermRole role) const {
    Matrix v = Matrix::Zero(N, N);
    cplx m;
    for (const auto& term : terms) {
        if (term.role != role) continue;
        term.multiplier(t, std::span<const double>(&xi, 1), std::span<cplx>(&m, 1));
        v += m * term.coefficient(x);
    }
    return v;
}

bool SeparableSymbol::x_dependent() const {
    for (const auto& term : terms)
        if (term.x_dependent()) return true;
    return false;
}

} // namespace degenhyp::symbols
