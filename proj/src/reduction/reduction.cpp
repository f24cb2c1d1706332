#include "degenhyp/reduction/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "degenhyp/linalg.hpp"

namespace degenhyp::reduction {

ReducedSymbols reduced_symbols(const ScalarOperator& op, const Vec& x, const Vec& xi_hat, double t) {
    op.validate();
    if (xi_hat.size() != op.dim) throw Error(ErrorKind::SizeMismatch, "covector dimension");
    if (std::abs(xi_hat.norm() - 1.0) > 1e-12) throw Error(ErrorKind::Domain, "xi_hat must be a unit covector");
    const int m = op.m;
    ReducedSymbols r{CVector::Zero(m), CVector::Zero(std::max(m - 1, 0))};
    const cplx il(0.0, 1.0 / op.spec.l_star());
    for (const auto& term : op.terms) {
        const int a = term.order_x();
        if (a == m - term.j) r.p(term.j) += term.coefficient(t, x) * term.monomial(xi_hat);
        else if (a == m - term.j - 1 && term.j <= m - 2)
            r.q(term.j) += il * term.coefficient(0.0, x) * term.monomial(xi_hat);
    }
    return r;
}

std::vector<double> strict_roots(const CVector& p) {
    const CVector z = linalg::polynomial_roots(p);
    double scale = 0.0;
    for (Eigen::Index i = 0; i < z.size(); ++i) scale = std::max(scale, std::abs(z(i)));
    std::vector<double> roots;
    for (Eigen::Index i = 0; i < z.size(); ++i) {
        if (std::abs(z(i).imag()) > 1e-8 * std::max(1.0, scale)) {
            std::ostringstream os;
            os << "non-real root " << z(i);
            throw Error(ErrorKind::StrictHyperbolicity, os.str());
        }
        roots.push_back(z(i).real());
    }
    std::sort(roots.begin(), roots.end());
    for (std::size_t i = 1; i < roots.size(); ++i)
        if (roots[i] - roots[i - 1] < systems::kGapTol * std::max(scale, 1e-300))
            throw Error(ErrorKind::StrictHyperbolicity, "coincident roots");
    return roots;
}

systems::FirstOrderSystem companion_system(const ScalarOperator& op) {
    op.validate();
    const int m = op.m;
    systems::FirstOrderSystem sys{m, op.spec, {}, {}, {}, {}, {}, {}, op.name + "-companion"};
    sys.A0 = [op](double t, const Vec& x, const Vec& xh) { return linalg::companion(reduced_symbols(op, x, xh, t).p); };
    sys.A1 = [op, m](const Vec& x, const Vec& xh) {
        const auto r = reduced_symbols(op, x, xh, 0.0);
        Matrix a = Matrix::Zero(m, m);
        for (int i = 0; i < m; ++i) a(i, i) = m - 1 - i;
        for (int j = 0; j + 1 < m; ++j) a(m - 1, j) = -r.q(j);
        return a;
    };
    for (int h = 0; h < m; ++h)
        sys.roots.push_back({[op, h](double t, const Vec& x, const Vec& xh) {
                                 return strict_roots(reduced_symbols(op, x, xh, t).p)[static_cast<std::size_t>(h)];
                             },
                             1});
    if (op.dim == 1) sys.separable = companion_full_symbol(op, weights::Cutoff());
    sys.validate();
    return sys;
}

symbols::SeparableSymbol companion_full_symbol(const ScalarOperator& op, const weights::Cutoff& cut) {
    op.validate();
    if (op.dim != 1) throw Error(ErrorKind::Capability, "the spectral reduction is implemented in 1-D only");
    const int m = op.m;
    const auto spec = op.spec;
    symbols::SeparableSymbol sym{m, {}};
    if (m > 1) {
        Matrix diag = Matrix::Zero(m, m);
        Matrix super = Matrix::Zero(m, m);
        for (int i = 0; i + 1 < m; ++i) {
            diag(i, i) = m - 1 - i;
            super(i, i + 1) = 1.0;
        }
        sym.terms.push_back({super, {}, symbols::pointwise([spec, cut](double t, double xi) -> cplx {
                                 return weights::weight_pair(spec, cut, t, std::abs(xi)).g;
                             }),
                             symbols::TermRole::Principal});
        sym.terms.push_back({diag, {}, symbols::pointwise([spec, cut](double t, double xi) {
                                 const auto w = weights::weight_pair(spec, cut, t, std::abs(xi));
                                 const auto r = weights::weight_rates(spec, cut, t, std::abs(xi));
                                 return cplx(0.0, -r.dg_dt / w.g);
                             }),
                             symbols::TermRole::Secondary});
    }
    for (const auto& term : op.terms) {
        const int a = term.order_x();
        const int j = term.j;
        const int e = op.levi_exponent(term);
        const auto role = a == m - j       ? symbols::TermRole::Principal
                          : a == m - j - 1 ? symbols::TermRole::Secondary
                                           : symbols::TermRole::Remainder;
        Matrix E = Matrix::Zero(m, m);
        E(m - 1, j) = 1.0;
        for (const auto& part : term.parts) {
            auto time = part.time;
            symbols::SeparableTerm st;
            st.role = role;
            if (part.x_dependent()) {
                auto space = part.space;
                st.coeff_x = [E, space](double x) { return Matrix(E * space(vec1(x))); };
            } else {
                st.coeff = E;
            }
            const int power = m - 1 - j;
            st.multiplier = symbols::pointwise([spec, cut, time, e, a, power](double t, double xi) {
                const auto w = weights::weight_pair(spec, cut, t, std::abs(xi));
                const cplx c = time ? time(t) : cplx(1.0);
                return -c * std::pow(t, e) * std::pow(xi, a) / std::pow(w.g, power);
            });
            sym.terms.push_back(std::move(st));
        }
    }
    return sym;
}

Vandermonde vandermonde_symmetrizer(const std::vector<double>& roots, const CVector& p) {
    const auto m = static_cast<Eigen::Index>(roots.size());
    if (p.size() != m) throw Error(ErrorKind::SizeMismatch, "root count differs from the degree of p");
    for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t j = i + 1; j < roots.size(); ++j)
            if (roots[i] == roots[j]) throw Error(ErrorKind::StrictHyperbolicity, "coincident roots");
    Vandermonde v{Matrix(m, m), Matrix(m, m)};
    for (Eigen::Index h = 0; h < m; ++h) {
        const double mu = roots[static_cast<std::size_t>(h)];
        const auto pe = linalg::eval_monic(p, mu);
        if (std::abs(pe.d1) == 0.0) throw Error(ErrorKind::DegenerateRoot, "p'(mu) = 0");
        for (Eigen::Index i = 0; i < m; ++i) v.M0_inv(i, h) = std::pow(mu, static_cast<double>(i));
        // M0_{hj} = (mu^{m-j-1} + p_{m-1} mu^{m-j-2} + ... + p_{j+1}) / p'(mu)
        for (Eigen::Index j = 0; j < m; ++j) {
            cplx s = 0.0;
            for (Eigen::Index i = m; i > j; --i) s = s * mu + (i == m ? cplx(1.0) : p(i));
            v.M0(h, j) = s / pe.d1;
        }
    }
    return v;
}

systems::DeltaBound delta_bound_scalar(const ScalarOperator& op, const std::vector<Vec>& x_grid,
                                       const std::vector<Vec>& xi_samples) {
    if (xi_samples.empty()) throw Error(ErrorKind::Validation, "no covector samples");
    const double bl = op.spec.beta_star() * op.spec.l_star();
    systems::DeltaBound out;
    for (const auto& x : x_grid) {
        double best = -std::numeric_limits<double>::infinity();
        int best_h = 0;
        Vec best_xi = xi_samples.front();
        std::vector<double> per_root(static_cast<std::size_t>(op.m), -std::numeric_limits<double>::infinity());
        for (const auto& xh : xi_samples) {
            const auto r = reduced_symbols(op, x, xh, 0.0);
            const auto roots = strict_roots(r.p);
            double scale = 1.0;
            for (double mu : roots) scale = std::max(scale, std::abs(mu));
            for (std::size_t h = 0; h < roots.size(); ++h) {
                const double mu = roots[h];
                const auto pe = linalg::eval_monic(r.p, mu);
                if (std::abs(pe.d1) < 1e-10 * std::pow(scale, op.m - 1))
                    throw Error(ErrorKind::DegenerateRoot, "|p'(mu_h)| below tolerance");
                cplx qv = 0.0;
                for (Eigen::Index j = r.q.size() - 1; j >= 0; --j) qv = qv * mu + r.q(j);
                const double quotient = (-(0.5 * mu * pe.d2 + qv.real()) / pe.d1).real();
                per_root[h] = std::max(per_root[h], quotient);
                if (quotient > best) {
                    best = quotient;
                    best_h = static_cast<int>(h);
                    best_xi = xh;
                }
            }
        }
        out.x.push_back(x);
        out.delta.push_back(best);
        out.loss.push_back(bl * best);
        out.argmax_block.push_back(best_h);
        out.argmax_xi.push_back(best_xi);
        out.block_max.push_back(per_root);
    }
    return out;
}

double cross_validate(const ScalarOperator& op, const std::vector<Vec>& x_grid, const std::vector<Vec>& xi_samples) {
    const auto sys = companion_system(op);
    const auto pair = systems::symmetrizer_from_roots(sys, {0.0}, x_grid, xi_samples);
    const auto dsys = systems::delta_bound_system(sys, pair, x_grid, xi_samples);
    const auto dsc = delta_bound_scalar(op, x_grid, xi_samples);
    double worst = 0.0;
    for (std::size_t i = 0; i < x_grid.size(); ++i)
        worst = std::max(worst, std::abs(dsys.delta[i] - dsc.delta[i] - (op.m - 1)));
    return worst;
}

} // namespace degenhyp::reduction
