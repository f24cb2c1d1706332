#include <algorithm>
#include <cmath>
#include <random>

#include <doctest.h>

#include "degenhyp/linalg.hpp"
#include "degenhyp/reduction/reduction.hpp"
#include "random_operators.hpp"

using namespace degenhyp;
using namespace degenhyp::reduction;

namespace {

const std::vector<Vec> kPm{vec1(1.0), vec1(-1.0)};

std::vector<Vec> x_points(int n) {
    std::vector<Vec> xs;
    for (int i = 0; i < n; ++i) xs.push_back(vec1(2.0 * M_PI * i / n));
    return xs;
}

} // namespace

TEST_CASE("reduced symbols of the qi operator") {
    for (double k : {-0.5, 0.0, 1.0, 2.5}) {
        const auto op = qi_operator(k);
        for (double s : {1.0, -1.0}) {
            const auto r = reduced_symbols(op, vec1(0.4), vec1(s));
            REQUIRE(r.p.size() == 2);
            REQUIRE(r.q.size() == 1);
            CHECK(std::abs(r.p(0) - cplx(-1.0)) < 1e-15);
            CHECK(std::abs(r.p(1)) < 1e-15);
            CHECK(std::abs(r.q(0) - cplx(-(4 * k + 1) * s)) < 1e-14);
        }
    }
    CHECK_THROWS_AS((void)reduced_symbols(qi_operator(1.0), vec1(0.0), vec1(0.5)), Error);
}

TEST_CASE("reduced symbols of the wave and transport operators") {
    for (int l : {1, 2, 3}) {
        const auto r = reduced_symbols(wave_operator(l), vec1(0.0), vec1(1.0));
        CHECK(std::abs(r.p(0) + 1.0) < 1e-15);
        CHECK(std::abs(r.q(0)) == 0.0);
    }
    const auto r = reduced_symbols(transport_operator(0.7, 2), vec1(0.0), vec1(-1.0));
    REQUIRE(r.p.size() == 1);
    CHECK(r.q.size() == 0);
    CHECK(std::abs(r.p(0) - cplx(0.7)) < 1e-15);
}

TEST_CASE("random operators have the requested characteristic roots") {
    std::mt19937_64 rng(11);
    for (int m = 1; m <= 5; ++m) {
        const auto op = testing::random_strict_operator(rng, m, 1);
        const auto r = reduced_symbols(op, vec1(0.0), vec1(1.0));
        CHECK(r.p.size() == m);
        CHECK(r.q.size() == std::max(m - 1, 0));
        const auto roots = strict_roots(r.p);
        for (double mu : roots) CHECK(std::abs(linalg::eval_monic(r.p, mu).value) < 1e-10);
        for (std::size_t i = 1; i < roots.size(); ++i) CHECK(roots[i] - roots[i - 1] >= 0.3 - 1e-9);
    }
}

TEST_CASE("strict roots rejects complex and coincident roots") {
    CVector p(2);
    p << 1.0, 0.0;  // tau^2 + 1
    CHECK_THROWS_AS((void)strict_roots(p), Error);
    try {
        (void)strict_roots(p);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::StrictHyperbolicity);
    }
    p << 1.0, -2.0;  // (tau - 1)^2
    CHECK_THROWS_AS((void)strict_roots(p), Error);
    p << -1.0, 0.0;
    const auto roots = strict_roots(p);
    REQUIRE(roots.size() == 2);
    CHECK(roots[0] == doctest::Approx(-1.0));
    CHECK(roots[1] == doctest::Approx(1.0));
}

TEST_CASE("companion system") {
    const auto sys = companion_system(qi_operator(1.0));
    CHECK(sys.N == 2);
    const Matrix a0 = sys.A0(0.0, vec1(0.0), vec1(1.0));
    CHECK(std::abs(a0(0, 1) - 1.0) < 1e-15);
    CHECK(std::abs(a0(1, 0) - 1.0) < 1e-15);
    CHECK(std::abs(a0(0, 0)) + std::abs(a0(1, 1)) == 0.0);
    const Matrix a1 = sys.A1(vec1(0.0), vec1(1.0));
    CHECK(std::abs(a1(0, 0) - 1.0) < 1e-15);
    CHECK(std::abs(a1(1, 0) - 5.0) < 1e-14);  // -q_0 = 4k + 1
    CHECK(std::abs(a1(1, 1)) == 0.0);
    CHECK(std::abs(a1(0, 1)) == 0.0);

    const auto s1 = companion_system(transport_operator(1.3, 1));
    CHECK(s1.N == 1);
    CHECK(std::abs(s1.A1(vec1(0.0), vec1(1.0))(0, 0)) == 0.0);

    std::mt19937_64 rng(5);
    const auto op = testing::random_strict_operator(rng, 3, 2);
    const auto s3 = companion_system(op);
    const auto r = reduced_symbols(op, vec1(0.0), vec1(-1.0));
    const Matrix c = s3.A0(0.0, vec1(0.0), vec1(-1.0));
    for (int j = 0; j < 3; ++j) CHECK(std::abs(c(2, j) + r.p(j)) < 1e-14);
    const auto mu = s3.root_values(0.0, vec1(0.0), vec1(-1.0));
    const auto expect = strict_roots(r.p);
    for (std::size_t h = 0; h < 3; ++h) CHECK(mu[h] == doctest::Approx(expect[h]));
}

TEST_CASE("vandermonde symmetrizer") {
    CVector p(2);
    p << -1.0, 0.0;
    const auto v = vandermonde_symmetrizer({-1.0, 1.0}, p);
    Matrix expect(2, 2);
    expect << 0.5, -0.5, 0.5, 0.5;
    CHECK((v.M0 - expect).norm() < 1e-15);
    CHECK((v.M0 * v.M0_inv - Matrix::Identity(2, 2)).norm() < 1e-14);
    CHECK((v.M0 * linalg::companion(p) * v.M0_inv - Matrix(Eigen::Vector2cd(-1.0, 1.0).asDiagonal())).norm() <
          1e-14);

    std::mt19937_64 rng(21);
    for (int m = 3; m <= 6; ++m) {
        const auto op = testing::random_strict_operator(rng, m, 1);
        const auto r = reduced_symbols(op, vec1(0.0), vec1(1.0));
        const auto roots = strict_roots(r.p);
        const auto vm = vandermonde_symmetrizer(roots, r.p);
        CHECK((vm.M0 * vm.M0_inv - Matrix::Identity(m, m)).norm() < 1e-9);
        Matrix D = Matrix::Zero(m, m);
        for (int h = 0; h < m; ++h) D(h, h) = roots[static_cast<std::size_t>(h)];
        CHECK((vm.M0 * linalg::companion(r.p) * vm.M0_inv - D).norm() < 1e-8);
        // det of the transposed Vandermonde is the product of root differences
        double prod = 1.0;
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j) prod *= roots[static_cast<std::size_t>(j)] - roots[static_cast<std::size_t>(i)];
        CHECK(std::abs(vm.M0_inv.determinant() - prod) < 1e-9 * std::max(1.0, std::abs(prod)));
    }
    CHECK_THROWS_AS((void)vandermonde_symmetrizer({1.0, 1.0}, p), Error);
    CHECK_THROWS_AS((void)vandermonde_symmetrizer({1.0}, p), Error);
}

TEST_CASE("scalar delta bound of the qi family") {
    for (double k : {-0.5, -0.25, 0.0, 0.5, 1.0, 2.0}) {
        const auto d = delta_bound_scalar(qi_operator(k), x_points(4), kPm);
        const double delta = 2.0 * std::max(k, -k - 0.5);
        const double loss = std::abs(k + 0.25) - 0.25;
        for (std::size_t i = 0; i < d.x.size(); ++i) {
            CHECK(d.delta[i] == doctest::Approx(delta).epsilon(1e-12));
            CHECK(d.loss[i] == doctest::Approx(loss).epsilon(1e-12));
        }
    }
}

TEST_CASE("scalar delta bound of the wave and transport operators") {
    for (int l : {1, 2, 3}) {
        const auto d = delta_bound_scalar(wave_operator(l), x_points(2), kPm);
        const double beta = 1.0 / (l + 1);
        CHECK(d.delta_max() == doctest::Approx(-0.5));
        CHECK(d.loss.front() == doctest::Approx(-beta * l / 2.0));
    }
    const auto d = delta_bound_scalar(transport_operator(-0.6, 1), x_points(2), kPm);
    CHECK(d.delta_max() == 0.0);
    CHECK_THROWS_AS((void)delta_bound_scalar(wave_operator(1), x_points(2), {}), Error);
}

TEST_CASE("scalar and system pipelines agree up to the companion shift") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        const int m = 2 + trial % 3;
        const auto op = testing::random_strict_operator(rng, m, 1 + trial % 2, 0.3, trial % 2 == 1);
        CHECK(cross_validate(op, x_points(5), kPm) < 1e-8);
    }
    CHECK(cross_validate(qi_operator(1.0), x_points(3), kPm) < 1e-12);
}

TEST_CASE("exact first-order form of the qi operator") {
    const weights::Cutoff cut;
    const auto sym = companion_full_symbol(qi_operator(1.0), cut);
    for (double t : {0.01, 0.2, 0.9})
        for (double xi : {-300.0, -2.0, 5.0, 4000.0}) {
            const Matrix a = sym.evaluate(t, 0.0, xi, symbols::TermRole::Principal);
            Eigen::ComplexEigenSolver<Matrix> es(a);
            std::vector<double> ev{es.eigenvalues()(0).real(), es.eigenvalues()(1).real()};
            std::sort(ev.begin(), ev.end());
            CHECK(ev[0] == doctest::Approx(-t * std::abs(xi)).epsilon(1e-10));
            CHECK(ev[1] == doctest::Approx(t * std::abs(xi)).epsilon(1e-10));
        }
    auto op2 = qi_operator(1.0);
    op2.dim = 2;
    CHECK_THROWS_AS((void)companion_full_symbol(op2, cut), Error);
}
