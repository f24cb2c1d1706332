#include "degenhyp/solver/spectral.hpp"

#include <cmath>
#include <mutex>
#include <numbers>

#include <fftw3.h>

namespace degenhyp::solver {

namespace {

std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}

} // namespace

PeriodicGrid::PeriodicGrid(int n) : n_(n) {
    if (n < 16 || (n & (n - 1)) != 0) throw Error(ErrorKind::Validation, "n_modes must be a power of two >= 16");
    xi_.resize(static_cast<std::size_t>(n));
    x_.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        xi_[static_cast<std::size_t>(i)] = i <= n / 2 ? i : i - n;
        x_[static_cast<std::size_t>(i)] = 2.0 * std::numbers::pi * i / n;
    }
}

int PeriodicGrid::index_of(int k) const {
    if (k > n_ / 2 || k <= -n_ / 2) throw Error(ErrorKind::Domain, "frequency outside the grid");
    return k >= 0 ? k : k + n_;
}

Fft::Fft(int n) : n_(n) {
    std::vector<fftw_complex> a(static_cast<std::size_t>(n)), b(static_cast<std::size_t>(n));
    std::lock_guard<std::mutex> lock(plan_mutex());
    fwd_ = fftw_plan_dft_1d(n, a.data(), b.data(), FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    bwd_ = fftw_plan_dft_1d(n, a.data(), b.data(), FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
}

Fft::~Fft() {
    std::lock_guard<std::mutex> lock(plan_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(fwd_));
    fftw_destroy_plan(static_cast<fftw_plan>(bwd_));
}

void Fft::forward(const cplx* in, cplx* out) const {
    fftw_execute_dft(static_cast<fftw_plan>(fwd_), reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
    const double s = 1.0 / n_;
    for (int i = 0; i < n_; ++i) out[i] *= s;
}

void Fft::backward(const cplx* in, cplx* out) const {
    fftw_execute_dft(static_cast<fftw_plan>(bwd_), reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
}

double l2_norm(const Matrix& coeffs) {
    return std::sqrt(2.0 * std::numbers::pi) * coeffs.norm();
}

SpectralOperator::SpectralOperator(symbols::SeparableSymbol symbol, weights::DegeneracySpec spec, PeriodicGrid grid,
                                   double eps)
    : symbol_(std::move(symbol)), spec_(spec), grid_(std::move(grid)), eps_(eps) {
    if (!(eps >= 0.0)) throw Error(ErrorKind::Validation, "eps must be >= 0");
    if (symbol_.N < 1) throw Error(ErrorKind::Validation, "empty system");
    const int n = grid_.n();
    coeff_at_.resize(symbol_.terms.size());
    for (std::size_t i = 0; i < symbol_.terms.size(); ++i) {
        const auto& term = symbol_.terms[i];
        if (!term.multiplier) throw Error(ErrorKind::Validation, "term without multiplier");
        if (term.x_dependent()) {
            for (double x : grid_.points()) coeff_at_[i].push_back(term.coeff_x(x));
        } else if (term.coeff.rows() != symbol_.N || term.coeff.cols() != symbol_.N) {
            throw Error(ErrorKind::SizeMismatch, "term coefficient size differs from N");
        }
    }
    if (symbol_.x_dependent()) fft_ = std::make_shared<Fft>(n);
    for (double xi : grid_.frequencies()) jbeta_inv_.push_back(std::pow(japanese(xi), -spec_.beta_star()));
}

void SpectralOperator::multipliers(double t, std::size_t term, std::vector<cplx>& m) const {
    const auto& xi = grid_.frequencies();
    m.resize(xi.size());
    symbol_.terms[term].multiplier(t, xi, m);
    if (eps_ == 0.0) return;
    switch (symbol_.terms[term].role) {
        case symbols::TermRole::Principal: break;
        case symbols::TermRole::Secondary: {
            const double f = t / (t + eps_);
            for (auto& v : m) v *= f;
            break;
        }
        case symbols::TermRole::Remainder:
            for (std::size_t k = 0; k < m.size(); ++k) {
                const double a = t + jbeta_inv_[k];
                m[k] *= a / (a + eps_);
            }
            break;
    }
}

void SpectralOperator::apply(double t, const Matrix& U, Matrix& out) const {
    const int n = grid_.n();
    const int N = symbol_.N;
    out.setZero(n, N);
    std::vector<cplx> m;
    for (std::size_t i = 0; i < symbol_.terms.size(); ++i) {
        multipliers(t, i, m);
        const Eigen::Map<const CVector> mv(m.data(), n);
        if (!symbol_.terms[i].x_dependent()) {
            out.noalias() += mv.asDiagonal() * U * symbol_.terms[i].coeff.transpose();
            continue;
        }
        const Matrix V = mv.asDiagonal() * U;
        Matrix phys(n, N), W(n, N);
        for (int c = 0; c < N; ++c) fft_->backward(V.col(c).data(), phys.col(c).data());
        const auto& C = coeff_at_[i];
        for (int j = 0; j < n; ++j) W.row(j) = (C[static_cast<std::size_t>(j)] * phys.row(j).transpose()).transpose();
        for (int c = 0; c < N; ++c) {
            CVector col(n);
            fft_->forward(W.col(c).data(), col.data());
            col(grid_.nyquist_index()) = 0.0;
            out.col(c) += col;
        }
    }
}

double SpectralOperator::symbol_bound(double t) const {
    const int n = grid_.n();
    std::vector<double> acc(static_cast<std::size_t>(n), 0.0);
    std::vector<cplx> m;
    for (std::size_t i = 0; i < symbol_.terms.size(); ++i) {
        multipliers(t, i, m);
        double cn = 0.0;
        if (symbol_.terms[i].x_dependent())
            for (const auto& c : coeff_at_[i]) cn = std::max(cn, c.norm());
        else
            cn = symbol_.terms[i].coeff.norm();
        for (int k = 0; k < n; ++k) acc[static_cast<std::size_t>(k)] += std::abs(m[static_cast<std::size_t>(k)]) * cn;
    }
    double best = 0.0;
    for (double v : acc) best = std::max(best, v);
    return best;
}

} // namespace degenhyp::solver
