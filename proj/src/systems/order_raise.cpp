#include <algorithm>
#include <cmath>
#include <vector>

#include "degenhyp/systems/delta_bound.hpp"

namespace degenhyp::systems {

namespace {

Matrix embed(const Matrix& a, int N, int r, int c) {
    Matrix out = Matrix::Zero(2 * N, 2 * N);
    out.block(r * N, c * N, N, N) = a;
    return out;
}

symbols::SeparableTerm placed(const symbols::SeparableTerm& term, int N, int r, int c) {
    symbols::SeparableTerm out = term;
    if (term.x_dependent()) {
        auto f = term.coeff_x;
        out.coeff_x = [f, N, r, c](double x) { return embed(f(x), N, r, c); };
        out.coeff = Matrix();
    } else {
        out.coeff = embed(term.coeff, N, r, c);
    }
    return out;
}

} // namespace

FirstOrderSystem order_raised_system(const FirstOrderSystem& sys, const weights::Cutoff& cut) {
    sys.validate();
    if (!sys.separable)
        throw Error(ErrorKind::UnsupportedStructure,
                    "order raising needs a separable symbol (finite sum of a_i(x) m_i(t, xi))");
    const int N = sys.N;
    const auto spec = sys.spec;
    const int l = spec.l_star();
    FirstOrderSystem out{2 * N, spec, {}, {}, {}, {}, {}, {}, sys.name + "-raised"};
    auto A0 = sys.A0;
    auto A1 = sys.A1;
    out.A0 = [A0, N](double t, const Vec& x, const Vec& xh) {
        const Matrix a = A0(t, x, xh);
        Matrix r = Matrix::Zero(2 * N, 2 * N);
        r.topLeftCorner(N, N) = a;
        r.bottomRightCorner(N, N) = a;
        return r;
    };
    out.A1 = [A1, N](const Vec& x, const Vec& xh) {
        const Matrix a = A1(x, xh);
        Matrix r = Matrix::Zero(2 * N, 2 * N);
        r.topLeftCorner(N, N) = a;
        r.bottomRightCorner(N, N) = a;
        return r;
    };
    for (const auto& root : sys.roots) out.roots.push_back({root.mu, 2 * root.multiplicity});

    symbols::SeparableSymbol sep{2 * N, {}};
    for (const auto& term : sys.separable->terms) {
        sep.terms.push_back(placed(term, N, 0, 0));
        sep.terms.push_back(placed(term, N, 1, 1));
    }
    // (D_t g)/g + l (D_t h)/h on the top-left block; it vanishes where chi+ = 1.
    sep.terms.push_back({embed(Matrix::Identity(N, N), N, 0, 0), {},
                         symbols::pointwise([spec, cut, l](double t, double xi) {
                             const auto w = weights::weight_pair(spec, cut, t, std::abs(xi));
                             const auto r = weights::weight_rates(spec, cut, t, std::abs(xi));
                             return cplx(0.0, -(r.dg_dt / w.g + l * r.dh_dt / w.h));
                         }),
                         symbols::TermRole::Remainder});
    // Bottom-left: (D_t m + l (D_t h / h) m) / g per term, D_t m by finite differences.
    for (const auto& term : sys.separable->terms) {
        auto m = term.multiplier;
        const double T = spec.T();
        symbols::SeparableTerm lower = placed(term, N, 1, 0);
        lower.role = symbols::TermRole::Remainder;
        lower.multiplier = [m, spec, cut, l, T](double t, std::span<const double> xi, std::span<cplx> out_values) {
            const std::size_t n = xi.size();
            const double dt = 1e-6 * std::max(t, 1e-3 * T);
            const double ta = std::max(0.0, t - dt);
            const double tb = std::min(T, t + dt);
            std::vector<cplx> m0(n), ma(n), mb(n);
            m(t, xi, m0);
            m(ta, xi, ma);
            m(tb, xi, mb);
            for (std::size_t k = 0; k < n; ++k) {
                const auto w = weights::weight_pair(spec, cut, t, std::abs(xi[k]));
                const auto r = weights::weight_rates(spec, cut, t, std::abs(xi[k]));
                const cplx Dm = cplx(0.0, -1.0) * (mb[k] - ma[k]) / (tb - ta);
                const cplx Dh_over_h(0.0, -r.dh_dt / w.h);
                out_values[k] = (Dm + static_cast<double>(l) * Dh_over_h * m0[k]) / w.g;
            }
        };
        sep.terms.push_back(std::move(lower));
    }
    out.separable = std::move(sep);
    out.validate();
    return out;
}

Matrix secondary_probe(const FirstOrderSystem& sys, double x, double xi_hat, double t, double zeta) {
    const int l = sys.spec.l_star();
    const double xi = zeta * xi_hat / std::pow(t, l + 1);
    const Vec xv = vec1(x);
    const Vec xh = vec1(xi_hat > 0.0 ? 1.0 : -1.0);
    Matrix A;
    if (sys.separable) A = sys.separable->evaluate(t, x, xi);
    else A = sys.full_symbol(weights::Cutoff(), t, xv, vec1(xi));
    const double lam = weights::degeneracy(sys.spec, t).lambda;
    return t * (A - lam * std::abs(xi) * sys.A0(t, xv, xh));
}

} // namespace degenhyp::systems
