#include "degenhyp/symbolcalc/structured_symbol.hpp"

#include <cmath>

namespace degenhyp::symbols {

namespace {

double chi_plus(const StructuredSymbol& s, double t, const Vec& xi) {
    return weights::cutoffs(s.spec, s.cut, t, xi).chi_plus;
}

} // namespace

Matrix StructuredSymbol::eval_a1(double t, const Vec& x, const Vec& zeta) const {
    return a1 ? a1(t, x, zeta) : Matrix::Zero(N, N);
}

Matrix StructuredSymbol::leading(double t, const Vec& x, const Vec& xi) const {
    const double cp = chi_plus(*this, t, xi);
    if (cp == 0.0) return Matrix::Zero(N, N);
    const double scale = std::pow(t, spec.l_star() + 1);
    const Vec zeta = scale * xi;
    return cp * std::pow(t, -orders.eta) * (a0(t, x, zeta) + eval_a1(t, x, zeta));
}

Matrix StructuredSymbol::operator()(double t, const Vec& x, const Vec& xi) const {
    Matrix v = leading(t, x, xi);
    if (a2) v += a2(t, x, xi);
    return v;
}

PrincipalSymbols principal_symbols(const StructuredSymbol& sym, double t, const Vec& x, const Vec& xi) {
    if (xi.size() == 0 || xi.norm() == 0.0) throw Error(ErrorKind::Domain, "principal symbols need xi != 0");
    sym.spec.check_time(t);
    PrincipalSymbols out;
    const int l = sym.spec.l_star();
    if (t > 0.0) {
        out.sigma_m = std::pow(t, -sym.orders.eta) * sym.a0(t, x, std::pow(t, l + 1) * xi);
    } else {
        // t^{-eta} a0(t,x,t^{l+1} xi) = t^{(l+1)m - eta} a0(t,x,xi) by homogeneity.
        const double p = (l + 1) * sym.orders.m - sym.orders.eta;
        if (p > 0.0) out.sigma_m = Matrix::Zero(sym.N, sym.N);
        else if (p == 0.0) out.sigma_m = sym.a0(0.0, x, xi);
    }
    out.sigma_tilde = sym.eval_a1(0.0, x, xi);
    out.sigma_tilde_top = sym.a0(0.0, x, xi);
    return out;
}

StructuredSymbol compose_leading(const StructuredSymbol& a, const StructuredSymbol& b) {
    if (a.N != b.N) throw Error(ErrorKind::SizeMismatch, "compose_leading: sizes differ");
    if (a.spec.l_star() != b.spec.l_star() || a.spec.T() != b.spec.T())
        throw Error(ErrorKind::Validation, "compose_leading: different degeneracies");
    StructuredSymbol c{a.N, a.spec, a.cut, {}, {}, {}, {}, {}};
    c.orders = {a.orders.m + b.orders.m, a.orders.eta + b.orders.eta, a.orders.log_power + b.orders.log_power};
    c.remainder_orders = {c.orders.m - 1.0, c.orders.eta - (a.spec.l_star() + 1), c.orders.log_power};
    c.a0 = [a, b](double t, const Vec& x, const Vec& z) { return Matrix(a.a0(t, x, z) * b.a0(t, x, z)); };
    c.a1 = [a, b](double t, const Vec& x, const Vec& z) {
        return Matrix(a.a0(t, x, z) * b.eval_a1(t, x, z) + a.eval_a1(t, x, z) * b.a0(t, x, z));
    };
    auto lead = c;
    c.a2 = [a, b, lead](double t, const Vec& x, const Vec& xi) {
        return Matrix(a(t, x, xi) * b(t, x, xi) - lead.leading(t, x, xi));
    };
    return c;
}

StructuredSymbol adjoint(const StructuredSymbol& a) {
    StructuredSymbol c = a;
    c.a0 = [a](double t, const Vec& x, const Vec& z) { return Matrix(a.a0(t, x, z).adjoint()); };
    if (a.a1) c.a1 = [a](double t, const Vec& x, const Vec& z) { return Matrix(a.a1(t, x, z).adjoint()); };
    if (a.a2) c.a2 = [a](double t, const Vec& x, const Vec& xi) { return Matrix(a.a2(t, x, xi).adjoint()); };
    return c;
}

StructuredSymbol identity_symbol(const weights::DegeneracySpec& spec, const weights::Cutoff& cut, int N) {
    StructuredSymbol s{N, spec, cut, {}, {}, {}, {0.0, 0.0, 0}, {0.0, 0.0, 0}};
    s.a0 = [N](double, const Vec&, const Vec&) { return Matrix(Matrix::Identity(N, N)); };
    s.a2 = [spec, cut, N](double t, const Vec&, const Vec& xi) {
        return Matrix(weights::cutoffs(spec, cut, t, xi).chi_minus * Matrix::Identity(N, N));
    };
    return s;
}

StructuredSymbol weight_power_symbol(const weights::DegeneracySpec& spec, const weights::Cutoff& cut, double m,
                                     double eta) {
    StructuredSymbol s{1, spec, cut, {}, {}, {}, {m, eta, 0}, {m - 1.0, eta - (spec.l_star() + 1), 0}};
    s.a0 = [m](double, const Vec&, const Vec& z) {
        Matrix v(1, 1);
        v(0, 0) = std::pow(z.norm(), m);
        return v;
    };
    auto lead = s;
    s.a2 = [spec, cut, m, eta, lead](double t, const Vec& x, const Vec& xi) {
        const auto w = weights::weight_pair(spec, cut, t, xi);
        Matrix v(1, 1);
        v(0, 0) = std::pow(w.g, m) * std::pow(w.h, eta - m);
        return Matrix(v - lead.leading(t, x, xi));
    };
    return s;
}

double homogeneity_defect(const StructuredSymbol& sym, double t, const Vec& x, const Vec& zeta, double s) {
    const Matrix base0 = sym.a0(t, x, zeta);
    double defect = (sym.a0(t, x, s * zeta) - std::pow(s, sym.orders.m) * base0).norm() /
                    std::max(1.0, std::pow(s, sym.orders.m) * base0.norm());
    if (sym.a1) {
        const Matrix base1 = sym.a1(t, x, zeta);
        const double scale = std::pow(s, sym.orders.m - 1.0);
        defect = std::max(defect, (sym.a1(t, x, s * zeta) - scale * base1).norm() / std::max(1.0, scale * base1.norm()));
    }
    return defect;
}

} // namespace degenhyp::symbols
