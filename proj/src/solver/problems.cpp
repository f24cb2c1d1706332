#include "degenhyp/solver/problems.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace degenhyp::solver {

namespace {

double sgn(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

Matrix diag2(double a, double b) {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = a;
    m(1, 1) = b;
    return m;
}

std::vector<Vec> analysis_x_points() {
    std::vector<Vec> xs;
    for (int i = 0; i < 8; ++i) xs.push_back(vec1(2.0 * std::numbers::pi * i / 8.0));
    return xs;
}

} // namespace

Matrix Problem::initial_state(const PeriodicGrid& grid, const CVector& phi_hat) const {
    const int n = grid.n();
    if (phi_hat.size() != n) throw Error(ErrorKind::SizeMismatch, "data length differs from n_modes");
    Matrix U = Matrix::Zero(n, symbol.N);
    if (scalar_order > 0) {
        const weights::Cutoff cut;
        for (int k = 0; k < n; ++k) {
            const double g = weights::weight_pair(spec, cut, 0.0, std::abs(grid.frequencies()[k])).g;
            U(k, 0) = std::pow(g, scalar_order - 1) * phi_hat(k);
        }
    } else {
        U.col(0) = phi_hat;
    }
    return U;
}

Matrix Problem::observable(const PeriodicGrid& grid, double t, const Matrix& U) const {
    if (scalar_order == 0) return U;
    const int n = grid.n();
    const weights::Cutoff cut;
    Matrix u(n, 1);
    for (int k = 0; k < n; ++k) {
        const double g = weights::weight_pair(spec, cut, t, std::abs(grid.frequencies()[k])).g;
        u(k, 0) = U(k, 0) / std::pow(g, scalar_order - 1);
    }
    return u;
}

double Problem::predicted_loss() const {
    const auto xs = analysis_x_points();
    const auto xi = systems::default_xi_samples(1);
    if (op) {
        const auto d = reduction::delta_bound_scalar(*op, xs, xi);
        return spec.beta_star() * spec.l_star() * d.delta_max();
    }
    if (sys) {
        const auto pair = systems::symmetrizer_from_roots(*sys, {0.0}, xs, xi);
        const auto d = systems::delta_bound_system(*sys, pair, xs, xi);
        return spec.beta_star() * spec.l_star() * d.delta_max();
    }
    return std::numeric_limits<double>::quiet_NaN();
}

Problem scalar_problem(const reduction::ScalarOperator& op) {
    Problem p{op.name, {}, op.spec, reduction::companion_full_symbol(op, weights::Cutoff()), op.m, op, std::nullopt};
    p.params.emplace_back("l_star", op.spec.l_star());
    return p;
}

Problem system_problem(const systems::FirstOrderSystem& sys) {
    if (!sys.separable) throw Error(ErrorKind::UnsupportedStructure, "solving needs a separable symbol");
    Problem p{sys.name, {}, sys.spec, *sys.separable, 0, std::nullopt, sys};
    p.params.emplace_back("l_star", sys.spec.l_star());
    return p;
}

Problem qi_problem(double k, double T) {
    auto p = scalar_problem(reduction::qi_operator(k, T));
    p.params.emplace_back("k", k);
    return p;
}

Problem wave_problem(int l_star, double T) {
    return scalar_problem(reduction::wave_operator(l_star, 0.0, T));
}

Problem transport_problem(double a, int l_star, double T) {
    auto p = scalar_problem(reduction::transport_operator(a, l_star, T));
    p.params.emplace_back("a", a);
    return p;
}

Problem differential_system_problem(const Matrix& A0, int l_star, double T) {
    return system_problem(systems::differential_system(A0, l_star, T));
}

Problem qi_energy_problem(double k, double c, double T) {
    const weights::DegeneracySpec spec(1, T);
    const weights::Cutoff cut;
    const double b0 = 4.0 * k + 1.0;
    const double delta = 0.5 * (1.0 + std::abs(b0));
    symbols::SeparableSymbol sym{2, {}};
    sym.terms.push_back({diag2(-1.0, 1.0), {}, symbols::pointwise([spec, cut](double t, double xi) -> cplx {
                             return weights::cutoffs(spec, cut, t, std::abs(xi)).chi_plus * t * std::abs(xi);
                         }),
                         symbols::TermRole::Principal});
    for (int comp = 0; comp < 2; ++comp) {
        const double side = comp == 0 ? -1.0 : 1.0;
        sym.terms.push_back({comp == 0 ? diag2(1.0, 0.0) : diag2(0.0, 1.0), {},
                             symbols::pointwise([spec, cut, b0, delta, side](double t, double xi) {
                                 const double cp = weights::cutoffs(spec, cut, t, std::abs(xi)).chi_plus;
                                 if (cp == 0.0) return cplx(0.0);
                                 const double shifted = 0.5 * (1.0 + side * b0 * sgn(xi)) - delta;
                                 return cplx(0.0, -cp * shifted / t);
                             }),
                             symbols::TermRole::Secondary});
    }
    Matrix e12 = Matrix::Zero(2, 2);
    e12(0, 1) = 1.0;
    sym.terms.push_back({e12, {}, symbols::pointwise([spec, cut, c](double t, double xi) -> cplx {
                             const auto w = weights::weight_pair(spec, cut, t, std::abs(xi));
                             return c * w.h * w.h / w.g;
                         }),
                         symbols::TermRole::Remainder});
    Problem p{"qi-energy", {{"k", k}, {"c", c}}, spec, std::move(sym), 0, std::nullopt, std::nullopt};
    return p;
}

Problem hermitian_test_problem(double T) {
    const weights::DegeneracySpec spec(1, T);
    Matrix J(2, 2);
    J << 0.0, 1.0, 1.0, 0.0;
    symbols::SeparableSymbol sym{2, {}};
    sym.terms.push_back(
        {J, {}, symbols::pointwise([](double t, double xi) -> cplx { return t * xi; }), symbols::TermRole::Principal});
    return Problem{"hermitian-test", {}, spec, std::move(sym), 0, std::nullopt, std::nullopt};
}

std::vector<double> qi_coefficients(int k) {
    if (k < 0) throw Error(ErrorKind::Domain, "qi_exact needs an integer k >= 0");
    std::vector<double> c{1.0};
    for (int j = 0; j < k; ++j) c.push_back(2.0 * (k - j) * c.back() / ((j + 1.0) * (2.0 * j + 1.0)));
    return c;
}

CVector qi_exact(int k, const CVector& phi_hat, double t, const PeriodicGrid& grid) {
    const auto c = qi_coefficients(k);
    const int n = grid.n();
    if (phi_hat.size() != n) throw Error(ErrorKind::SizeMismatch, "data length differs from n_modes");
    CVector u(n);
    for (int i = 0; i < n; ++i) {
        const double xi = grid.frequencies()[static_cast<std::size_t>(i)];
        const cplx z(0.0, xi * t * t);  // t^2 (i xi)
        cplx s = 0.0, zp = 1.0;
        for (double cj : c) {
            s += cj * zp;
            zp *= z;
        }
        u(i) = s * std::exp(cplx(0.0, 0.5 * xi * t * t)) * phi_hat(i);
    }
    return u;
}

CVector make_data(const PeriodicGrid& grid, double sigma, std::uint64_t seed) {
    const int n = grid.n();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    CVector phi = CVector::Zero(n);
    phi(0) = 1.0;
    for (int k = 1; k < n / 2; ++k) {
        const double amp = std::pow(japanese(k), -sigma - 0.5);
        const cplx v = std::polar(amp, phase(rng));
        phi(grid.index_of(k)) = v;
        phi(grid.index_of(-k)) = std::conj(v);
    }
    return phi;
}

CVector band_limited_data(const PeriodicGrid& grid, int k_max, std::uint64_t seed) {
    const int n = grid.n();
    if (k_max < 1 || k_max >= n / 2) throw Error(ErrorKind::Validation, "k_max must lie in [1, n/2)");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    CVector phi = CVector::Zero(n);
    phi(0) = 1.0;
    for (int k = 1; k <= k_max; ++k) {
        const cplx v = std::polar(std::pow(japanese(k), -2.0), phase(rng));
        phi(grid.index_of(k)) = v;
        phi(grid.index_of(-k)) = std::conj(v);
    }
    return phi;
}

} // namespace degenhyp::solver
