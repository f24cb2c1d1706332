#include "degenhyp/reduction/scalar_operator.hpp"

#include <cmath>

namespace degenhyp::reduction {

CoefficientPart constant(cplx c) {
    return {[c](double) { return c; }, {}};
}

int OperatorTerm::order_x() const {
    int s = 0;
    for (int a : alpha) s += a;
    return s;
}

cplx OperatorTerm::coefficient(double t, const Vec& x) const {
    cplx s = 0.0;
    for (const auto& p : parts) s += p(t, x);
    return s;
}

double OperatorTerm::monomial(const Vec& xi) const {
    double v = 1.0;
    for (std::size_t i = 0; i < alpha.size(); ++i) v *= std::pow(xi(static_cast<Eigen::Index>(i)), alpha[i]);
    return v;
}

void ScalarOperator::validate() const {
    if (m < 1) throw Error(ErrorKind::Validation, "operator order must be >= 1");
    if (dim < 1) throw Error(ErrorKind::Validation, "space dimension must be >= 1");
    for (const auto& term : terms) {
        if (static_cast<int>(term.alpha.size()) != dim)
            throw Error(ErrorKind::Validation, "multi-index dimension differs from the space dimension");
        for (int a : term.alpha)
            if (a < 0) throw Error(ErrorKind::Validation, "negative multi-index entry");
        if (term.j < 0 || term.j >= m) throw Error(ErrorKind::Validation, "term needs 0 <= j < m");
        if (term.j + term.order_x() > m) throw Error(ErrorKind::Validation, "term needs j + |alpha| <= m");
        if (term.parts.empty()) throw Error(ErrorKind::Validation, "term without coefficient");
    }
}

int ScalarOperator::levi_exponent(const OperatorTerm& term) const {
    return std::max(0, term.j + (spec.l_star() + 1) * term.order_x() - m);
}

ScalarOperator qi_operator(double k, double T) {
    ScalarOperator op{2, weights::DegeneracySpec(1, T), 1, {}, "qi"};
    op.terms.push_back({0, {2}, {constant(-1.0)}});
    op.terms.push_back({0, {1}, {constant(cplx(0.0, 4.0 * k + 1.0))}});
    op.validate();
    return op;
}

ScalarOperator wave_operator(int l_star, double c, double T) {
    ScalarOperator op{2, weights::DegeneracySpec(l_star, T), 1, {}, "wave"};
    op.terms.push_back({0, {2}, {constant(-1.0)}});
    if (c != 0.0) op.terms.push_back({0, {1}, {constant(cplx(0.0, c))}});
    op.validate();
    return op;
}

ScalarOperator transport_operator(double a, int l_star, double T) {
    ScalarOperator op{1, weights::DegeneracySpec(l_star, T), 1, {}, "transport"};
    op.terms.push_back({0, {1}, {constant(-a)}});
    op.validate();
    return op;
}

} // namespace degenhyp::reduction
