#include "degenhyp/systems/first_order_system.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

namespace degenhyp::systems {

void FirstOrderSystem::validate() const {
    if (N < 1) throw Error(ErrorKind::Validation, "system size must be positive");
    if (!A0 || !A1) throw Error(ErrorKind::Validation, "system needs A0 and A1");
    if (roots.empty()) throw Error(ErrorKind::Validation, "system needs a root list");
    int total = 0;
    for (const auto& r : roots) {
        if (r.multiplicity < 1) throw Error(ErrorKind::Validation, "root multiplicity must be positive");
        total += r.multiplicity;
    }
    if (total != N) throw Error(ErrorKind::Validation, "root multiplicities must add up to N");
    if (separable && separable->N != N) throw Error(ErrorKind::SizeMismatch, "separable symbol size differs from N");
}

std::vector<int> FirstOrderSystem::block_sizes() const {
    std::vector<int> s;
    for (const auto& r : roots) s.push_back(r.multiplicity);
    return s;
}

std::vector<double> FirstOrderSystem::root_values(double t, const Vec& x, const Vec& xi_hat) const {
    std::vector<double> v;
    for (const auto& r : roots) v.push_back(r.mu(t, x, xi_hat));
    return v;
}

Matrix FirstOrderSystem::full_symbol(const weights::Cutoff& cut, double t, const Vec& x, const Vec& xi) const {
    const double r = xi.norm();
    if (r == 0.0) throw Error(ErrorKind::Domain, "full symbol needs xi != 0");
    const Vec xh = xi / r;
    const auto c = weights::cutoffs(spec, cut, t, r);
    Matrix v = Matrix::Zero(N, N);
    if (c.chi_plus > 0.0) {
        const double lam = weights::degeneracy(spec, t).lambda;
        v = c.chi_plus * (lam * r * A0(t, x, xh) - cplx(0.0, spec.l_star() / t) * A1(x, xh));
    }
    if (A2) v += A2(t, x, xi);
    return v;
}

symbols::StructuredSymbol FirstOrderSystem::structured(const weights::Cutoff& cut) const {
    symbols::StructuredSymbol s{N, spec, cut, {}, {}, A2, {1.0, 1.0, 0}, A2_orders};
    auto a0 = A0;
    auto a1 = A1;
    const int l = spec.l_star();
    s.a0 = [a0](double t, const Vec& x, const Vec& z) {
        const double r = z.norm();
        return Matrix(r * a0(t, x, z / r));
    };
    s.a1 = [a1, l](double, const Vec& x, const Vec& z) { return Matrix(cplx(0.0, -l) * a1(x, z / z.norm())); };
    return s;
}

std::vector<Root> eigen_roots(const TimeMatrixFn& A0, const std::vector<int>& multiplicities) {
    std::vector<Root> roots;
    int offset = 0;
    for (int m : multiplicities) {
        roots.push_back({[A0, offset, m](double t, const Vec& x, const Vec& xh) {
                             Eigen::ComplexEigenSolver<Matrix> es(A0(t, x, xh), false);
                             std::vector<double> ev;
                             for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
                                 ev.push_back(es.eigenvalues()(i).real());
                             std::sort(ev.begin(), ev.end());
                             double s = 0.0;
                             for (int i = 0; i < m; ++i) s += ev[static_cast<std::size_t>(offset + i)];
                             return s / m;
                         },
                         m});
        offset += m;
    }
    return roots;
}

namespace {

Matrix unit(int N, int i, int j) {
    Matrix e = Matrix::Zero(N, N);
    e(i, j) = 1.0;
    return e;
}

double sgn(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

} // namespace

FirstOrderSystem qi_system(double k, double T) {
    weights::DegeneracySpec spec(1, T);
    FirstOrderSystem sys{2, spec, {}, {}, {}, {}, {}, {}, "qi"};
    Matrix J(2, 2);
    J << 0.0, 1.0, 1.0, 0.0;
    sys.A0 = [J](double, const Vec&, const Vec&) { return J; };
    const double c = 4.0 * k + 1.0;
    sys.A1 = [c](const Vec&, const Vec& xh) {
        Matrix a(2, 2);
        a << 1.0, 0.0, c * sgn(xh(0)), 0.0;
        return a;
    };
    sys.roots = eigen_roots(sys.A0, {1, 1});

    const weights::Cutoff cut;
    symbols::SeparableSymbol sep{2, {}};
    sep.terms.push_back({J, {}, symbols::pointwise([spec, cut](double t, double xi) -> cplx {
                             const auto cp = weights::cutoffs(spec, cut, t, std::abs(xi)).chi_plus;
                             return cp * t * std::abs(xi);
                         }),
                         symbols::TermRole::Principal});
    auto inv_t = [spec, cut](double t, double xi) {
        const auto cp = weights::cutoffs(spec, cut, t, std::abs(xi)).chi_plus;
        return cp > 0.0 ? cp / t : 0.0;
    };
    sep.terms.push_back({unit(2, 0, 0), {}, symbols::pointwise([inv_t](double t, double xi) {
                             return cplx(0.0, -inv_t(t, xi));
                         }),
                         symbols::TermRole::Secondary});
    sep.terms.push_back({unit(2, 1, 0), {}, symbols::pointwise([inv_t, c](double t, double xi) {
                             return cplx(0.0, -c * sgn(xi) * inv_t(t, xi));
                         }),
                         symbols::TermRole::Secondary});
    sys.separable = std::move(sep);
    sys.validate();
    return sys;
}

FirstOrderSystem differential_system(const Matrix& A0, int l_star, double T) {
    if (A0.rows() != A0.cols()) throw Error(ErrorKind::SizeMismatch, "A0 must be square");
    if ((A0 - A0.adjoint()).norm() > 1e-12 * std::max(1.0, A0.norm()))
        throw Error(ErrorKind::Validation, "differential system expects a Hermitian A0");
    const int N = static_cast<int>(A0.rows());
    weights::DegeneracySpec spec(l_star, T);
    FirstOrderSystem sys{N, spec, {}, {}, {}, {}, {}, {}, "differential-system"};
    sys.A0 = [A0](double, const Vec&, const Vec& xh) { return Matrix(xh(0) * A0); };
    sys.A1 = [N](const Vec&, const Vec&) { return Matrix(Matrix::Zero(N, N)); };
    // Group repeated eigenvalues of A0 into blocks.
    Eigen::SelfAdjointEigenSolver<Matrix> es(A0, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd ev = es.eigenvalues();
    const double tol = 1e-6 * std::max(1.0, ev.cwiseAbs().maxCoeff());
    std::vector<int> mult;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (i > 0 && ev(i) - ev(i - 1) <= tol) ++mult.back();
        else mult.push_back(1);
    }
    sys.roots = eigen_roots(sys.A0, mult);
    symbols::SeparableSymbol sep{N, {}};
    sep.terms.push_back({A0, {}, symbols::pointwise([l_star](double t, double xi) -> cplx {
                             return std::pow(t, l_star) * xi;
                         }),
                         symbols::TermRole::Principal});
    sys.separable = std::move(sep);
    sys.validate();
    return sys;
}

FirstOrderSystem single_block_system(std::function<Matrix(double x)> a, int N, int l_star, double T) {
    weights::DegeneracySpec spec(l_star, T);
    FirstOrderSystem sys{N, spec, {}, {}, {}, {}, {}, {}, "single-block"};
    sys.A0 = [N](double, const Vec&, const Vec&) { return Matrix(Matrix::Zero(N, N)); };
    sys.A1 = [a](const Vec& x, const Vec&) { return a(x(0)); };
    sys.roots = {{[](double, const Vec&, const Vec&) { return 0.0; }, N}};
    const weights::Cutoff cut;
    symbols::SeparableSymbol sep{N, {}};
    sep.terms.push_back({Matrix(), a, symbols::pointwise([spec, cut](double t, double xi) -> cplx {
                             const auto cp = weights::cutoffs(spec, cut, t, std::abs(xi)).chi_plus;
                             return cp > 0.0 ? cplx(0.0, -spec.l_star() * cp / t) : cplx(0.0);
                         }),
                         symbols::TermRole::Secondary});
    sys.separable = std::move(sep);
    sys.validate();
    return sys;
}

std::vector<Vec> default_xi_samples(int dim) {
    std::vector<Vec> out;
    if (dim == 1) {
        out = {vec1(1.0), vec1(-1.0)};
    } else if (dim == 2) {
        for (int i = 0; i < 64; ++i) {
            const double a = 2.0 * std::numbers::pi * i / 64.0;
            Vec v(2);
            v << std::cos(a), std::sin(a);
            out.push_back(v);
        }
    } else if (dim == 3) {
        const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
        for (int i = 0; i < 64; ++i) {
            const double z = 1.0 - (2.0 * i + 1.0) / 64.0;
            const double r = std::sqrt(1.0 - z * z);
            Vec v(3);
            v << r * std::cos(golden * i), r * std::sin(golden * i), z;
            out.push_back(v);
        }
    } else {
        throw Error(ErrorKind::Capability, "default covector samples exist for dimensions 1 to 3 only");
    }
    return out;
}

} // namespace degenhyp::systems
