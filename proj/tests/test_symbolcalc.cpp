#include <cmath>
#include <limits>
#include <random>

#include <doctest.h>

#include "degenhyp/symbolcalc/estimates.hpp"
#include "degenhyp/symbolcalc/separable.hpp"
#include "degenhyp/systems/first_order_system.hpp"

using namespace degenhyp;
using namespace degenhyp::symbols;

namespace {

const weights::DegeneracySpec kL1(1, 1.0);
const weights::Cutoff kCut;

double jb(double r) { return std::sqrt(1.0 + r * r); }

SymbolFn scalar(std::function<double(double, double)> f) {
    return [f](double t, const Vec&, const Vec& xi) { return Matrix::Constant(1, 1, f(t, xi.norm())); };
}

// A 2x2 symbol of orders (1, 1) with x-dependence and a nonzero a1.
StructuredSymbol sample_a() {
    StructuredSymbol s{2, kL1, kCut, {}, {}, {}, {1.0, 1.0, 0}, {}};
    s.a0 = [](double, const Vec& x, const Vec& z) {
        Matrix m(2, 2);
        m << z(0), cplx(0.0, 1.0) * std::abs(z(0)), std::cos(x(0)) * z(0), -z(0);
        return m;
    };
    s.a1 = [](double t, const Vec& x, const Vec&) {
        Matrix m(2, 2);
        m << 1.0 + t, x(0), cplx(0.0, -2.0), 0.5;
        return m;
    };
    return s;
}

StructuredSymbol sample_b() {
    StructuredSymbol s{2, kL1, kCut, {}, {}, {}, {2.0, 1.0, 0}, {}};
    s.a0 = [](double, const Vec&, const Vec& z) {
        Matrix m(2, 2);
        m << z(0) * z(0), 0.0, 2.0 * z(0) * z(0), std::abs(z(0)) * z(0);
        return m;
    };
    s.a1 = [](double, const Vec& x, const Vec& z) {
        Matrix m(2, 2);
        m << std::sin(x(0)) * z(0), z(0), 0.0, cplx(1.0, 1.0) * z(0);
        return m;
    };
    return s;
}

} // namespace

TEST_CASE("principal symbols of weight powers") {
    for (auto [m, eta] : {std::pair{1.0, 1.0}, {0.0, 1.0}, {1.0, 0.0}, {2.0, 1.0}}) {
        const auto s = weight_power_symbol(kL1, kCut, m, eta);
        for (double t : {0.1, 0.5, 1.0})
            for (double xi : {3.0, -70.0}) {
                const auto p = principal_symbols(s, t, vec1(0.0), vec1(xi));
                REQUIRE(p.sigma_m.has_value());
                const double want = std::pow(t, -eta) * std::pow(t * t * std::abs(xi), m);
                CHECK(std::abs((*p.sigma_m)(0, 0) - want) <= 1e-12 * std::max(1.0, want));
                CHECK(p.sigma_tilde.norm() == 0.0);
            }
    }
    // t = 0: zero when (l+1) m > eta, finite when equal, absent when smaller
    CHECK(principal_symbols(weight_power_symbol(kL1, kCut, 1.0, 1.0), 0.0, vec1(0.0), vec1(4.0)).sigma_m->norm() == 0.0);
    CHECK(principal_symbols(weight_power_symbol(kL1, kCut, 1.0, 2.0), 0.0, vec1(0.0), vec1(4.0)).sigma_m->norm() ==
          doctest::Approx(4.0));
    CHECK_FALSE(principal_symbols(weight_power_symbol(kL1, kCut, 0.0, 1.0), 0.0, vec1(0.0), vec1(4.0)).sigma_m);
}

TEST_CASE("principal symbols of the qi system") {
    for (double k : {0.0, 1.0, -0.5}) {
        const auto sys = systems::qi_system(k, 1.0);
        const auto s = sys.structured(kCut);
        const double b0 = 4.0 * k + 1.0;
        for (double t : {0.2, 0.9})
            for (double xi : {5.0, -12.0}) {
                const auto p = principal_symbols(s, t, vec1(0.4), vec1(xi));
                Matrix J(2, 2);
                J << 0.0, 1.0, 1.0, 0.0;
                CHECK((*p.sigma_m - t * std::abs(xi) * J).norm() < 1e-13);
                Matrix st(2, 2);
                st << 1.0, 0.0, b0 * (xi > 0 ? 1.0 : -1.0), 0.0;
                st *= cplx(0.0, -1.0);
                CHECK((p.sigma_tilde - st).norm() < 1e-14);
                CHECK((p.sigma_tilde_top - std::abs(xi) * J).norm() < 1e-12);
            }
    }
}

TEST_CASE("principal symbol of a second-order differential symbol") {
    // a(t,x,xi) = c(x) (t xi)^2 + d(x) (t xi), written with zeta = t^2 xi and eta = 2
    StructuredSymbol s{1, kL1, kCut, {}, {}, {}, {2.0, 2.0, 0}, {}};
    s.a0 = [](double, const Vec& x, const Vec& z) { return Matrix::Constant(1, 1, (2.0 + std::cos(x(0))) * z(0) * z(0)); };
    s.a1 = [](double t, const Vec& x, const Vec& z) { return Matrix::Constant(1, 1, t * std::sin(x(0)) * z(0)); };
    for (double t : {0.3, 0.7})
        for (double x : {0.0, 1.1}) {
            const double xi = 9.0;
            const auto p = principal_symbols(s, t, vec1(x), vec1(xi));
            CHECK((*p.sigma_m)(0, 0).real() == doctest::Approx((2.0 + std::cos(x)) * (t * xi) * (t * xi)).epsilon(1e-13));
        }
}

TEST_CASE("homogeneity of the leading parts") {
    const auto a = sample_a();
    for (double s : {0.5, 3.0, 40.0}) CHECK(homogeneity_defect(a, 0.3, vec1(0.2), vec1(1.7), s) < 1e-13);
    CHECK(homogeneity_defect(systems::qi_system(1.0).structured(kCut), 0.5, vec1(0.0), vec1(-2.0), 7.0) < 1e-13);
}

TEST_CASE("composition with the identity") {
    const auto a = sample_a();
    const auto c = compose_leading(a, identity_symbol(kL1, kCut, 2));
    CHECK(c.orders.m == a.orders.m);
    CHECK(c.orders.eta == a.orders.eta);
    for (double t : {0.0, 0.05, 0.6})
        for (double xi : {2.0, -300.0}) {
            const Vec x = vec1(0.7), v = vec1(xi);
            CHECK((c(t, x, v) - a(t, x, v)).norm() <= 1e-12 * (1.0 + a(t, x, v).norm()));
        }
}

TEST_CASE("principal symbols are multiplicative") {
    const auto a = sample_a(), b = sample_b();
    const auto ab = compose_leading(a, b);
    CHECK(ab.orders.m == 3.0);
    CHECK(ab.orders.eta == 2.0);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ut(1e-3, 1.0), ux(0.0, 6.28), ul(0.0, 4.0), us(0.0, 1.0);
    double worst_sigma = 0.0, worst_cross = 0.0, worst_value = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double t = ut(rng);
        const Vec x = vec1(ux(rng));
        const Vec xi = vec1((us(rng) < 0.5 ? -1.0 : 1.0) * std::pow(10.0, ul(rng)));
        const auto pa = principal_symbols(a, t, x, xi), pb = principal_symbols(b, t, x, xi);
        const auto pab = principal_symbols(ab, t, x, xi);
        const Matrix prod = *pa.sigma_m * *pb.sigma_m;
        worst_sigma = std::max(worst_sigma, (*pab.sigma_m - prod).norm() / (1.0 + prod.norm()));
        const Matrix cross = pa.sigma_tilde_top * pb.sigma_tilde + pa.sigma_tilde * pb.sigma_tilde_top;
        worst_cross = std::max(worst_cross, (pab.sigma_tilde - cross).norm() / (1.0 + cross.norm()));
        const Matrix full = a(t, x, xi) * b(t, x, xi);
        worst_value = std::max(worst_value, (ab(t, x, xi) - full).norm() / (1.0 + full.norm()));
    }
    CHECK(worst_sigma < 1e-12);
    CHECK(worst_cross < 1e-12);
    CHECK(worst_value < 1e-12);
}

TEST_CASE("adjoint") {
    const auto a = sample_a();
    const auto s = adjoint(a);
    for (double t : {0.0, 0.4})
        CHECK((s(t, vec1(1.0), vec1(-6.0)) - a(t, vec1(1.0), vec1(-6.0)).adjoint()).norm() < 1e-14);
}

TEST_CASE("separable symbols sum their terms by role") {
    SeparableSymbol s{2, {}};
    s.terms.push_back({Matrix::Identity(2, 2), {}, pointwise([](double t, double xi) -> cplx { return t * xi; }),
                       TermRole::Principal});
    s.terms.push_back({Matrix::Ones(2, 2), {}, pointwise([](double, double) -> cplx { return cplx(0.0, 1.0); }),
                       TermRole::Remainder});
    const Matrix v = s.evaluate(0.5, 0.0, 4.0);
    CHECK(v(0, 0) == cplx(2.0, 1.0));
    CHECK(v(0, 1) == cplx(0.0, 1.0));
    CHECK(s.evaluate(0.5, 0.0, 4.0, TermRole::Principal)(0, 1) == cplx(0.0));
    CHECK_FALSE(s.x_dependent());
}

TEST_CASE("symbol class estimates") {
    weights::GridSpec grid;
    const MaxOrders mo;
    SUBCASE("weight powers pass their own class") {
        for (auto [m, eta] : {std::pair{1.0, 1.0}, {0.0, 1.0}, {1.0, 0.0}}) {
            const auto s = weight_power_symbol(kL1, kCut, m, eta);
            const SymbolFn f = [s](double t, const Vec& x, const Vec& xi) { return s(t, x, xi); };
            const auto r = estimate_constants(f, {m, eta, 0}, kL1, grid, mo);
            CHECK(r.pass);
            for (const auto& e : r.entries) CHECK(std::isfinite(e.C));
        }
    }
    SUBCASE("lambda <xi> is not of order (0, 0)") {
        const auto f = scalar([](double t, double r) { return t * jb(r); });
        CHECK_FALSE(estimate_constants(f, {0.0, 0.0, 0}, kL1, grid, mo).pass);
        CHECK(estimate_constants(f, {1.0, 1.0, 0}, kL1, grid, mo).pass);
    }
    SUBCASE("chi- <xi>^beta") {
        const auto f = scalar([](double t, double r) {
            return weights::cutoffs(kL1, kCut, t, r).chi_minus * std::pow(jb(r), kL1.beta_star());
        });
        // lives where g ~ h ~ <xi>^beta, so it sits in every (m, 1)
        CHECK(estimate_constants(f, {-1.0, 1.0, 0}, kL1, grid, mo).pass);
        CHECK(estimate_constants(f, {-3.0, 1.0, 0}, kL1, grid, mo).pass);
        // the value <xi>^beta at t = 0 is unbounded against weight 1
        CHECK_FALSE(estimate_constants(f, {-1.0, 0.0, 0}, kL1, grid, mo).pass);
    }
    SUBCASE("non-finite values are reported") {
        const auto f = scalar([](double t, double) { return t > 0.5 ? std::numeric_limits<double>::quiet_NaN() : 1.0; });
        CHECK_THROWS_AS((void)estimate_constants(f, {0.0, 0.0, 0}, kL1, grid, mo), Error);
    }
    SUBCASE("csv layout") {
        const auto r = estimate_constants(scalar([](double, double) { return 1.0; }), {0.0, 0.0, 0}, kL1, grid, mo);
        CHECK(r.csv().rfind("j,alpha,beta,C,verdict\n", 0) == 0);
    }
}

TEST_CASE("ellipticity margin") {
    weights::GridSpec grid;
    const auto g = scalar([](double t, double r) { return weights::weight_pair(kL1, kCut, t, r).g; });
    const auto band = weights::weight_bands(kL1, kCut, weights::build_grid(grid)).g_ratio;
    const auto e = ellipticity_margin(g, {1.0, 1.0, 0}, kL1, grid);
    CHECK(e.pass);
    CHECK(e.c1 >= 0.9 * band.lo);
    CHECK(e.c1 <= 1.1 * band.lo);

    const auto z = ellipticity_margin(scalar([](double, double) { return 0.0; }), {0.0, 0.0, 0}, kL1, grid);
    CHECK(z.c1 == 0.0);
    CHECK_FALSE(z.pass);

    const SymbolFn vinv = [](double, const Vec&, const Vec&) {
        Matrix m(2, 2);
        m << 1.0, 1.0, 1.0, -1.0;
        return m;
    };
    CHECK(ellipticity_margin(vinv, {0.0, 0.0, 0}, kL1, grid).c1 == doctest::Approx(2.0));
}
