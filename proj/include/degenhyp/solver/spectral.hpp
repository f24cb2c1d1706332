#pragma once

#include <memory>
#include <vector>

#include "degenhyp/symbolcalc/separable.hpp"
#include "degenhyp/weights/weights.hpp"

namespace degenhyp::solver {

/// 2pi-periodic grid with n points; Fourier modes in FFT order, so index i
/// carries xi = i for i <= n/2 and xi = i - n otherwise.
class PeriodicGrid {
public:
    /// n must be a power of two, at least 16.
    explicit PeriodicGrid(int n);

    [[nodiscard]] int n() const noexcept { return n_; }
    [[nodiscard]] int nyquist_index() const noexcept { return n_ / 2; }
    [[nodiscard]] const std::vector<double>& frequencies() const noexcept { return xi_; }
    [[nodiscard]] const std::vector<double>& points() const noexcept { return x_; }
    /// FFT index of the integer frequency k (|k| < n/2, or k = n/2).
    [[nodiscard]] int index_of(int k) const;

private:
    int n_;
    std::vector<double> xi_;
    std::vector<double> x_;
};

/// Normalized transforms: forward u -> u_hat_k = (1/n) sum_j u_j e^{-i k x_j},
/// backward u_hat -> u_j = sum_k u_hat_k e^{i k x_j}. Plans are shared and
/// created under a lock; execution is thread-safe.
class Fft {
public:
    explicit Fft(int n);
    ~Fft();
    Fft(const Fft&) = delete;
    Fft& operator=(const Fft&) = delete;

    void forward(const cplx* in, cplx* out) const;
    void backward(const cplx* in, cplx* out) const;

private:
    int n_;
    void* fwd_;
    void* bwd_;
};

/// L^2(0, 2pi) norm from normalized coefficients: sqrt(2pi sum |u_hat|^2).
[[nodiscard]] double l2_norm(const Matrix& coeffs);

/// The operator sum_i a_i(x) m_i(t, D_x) acting on coefficient arrays
/// (rows = modes, columns = components), with the epsilon regularization
/// applied to secondary and remainder terms.
class SpectralOperator {
public:
    SpectralOperator(symbols::SeparableSymbol symbol, weights::DegeneracySpec spec, PeriodicGrid grid, double eps);

    /// out = A(t, x, D_x) U
    void apply(double t, const Matrix& U, Matrix& out) const;
    /// Upper bound on max_k |A(t, x, xi_k)| (for diagnostics).
    [[nodiscard]] double symbol_bound(double t) const;

    [[nodiscard]] int components() const noexcept { return symbol_.N; }
    [[nodiscard]] const PeriodicGrid& grid() const noexcept { return grid_; }
    [[nodiscard]] const weights::DegeneracySpec& spec() const noexcept { return spec_; }
    [[nodiscard]] double eps() const noexcept { return eps_; }

private:
    void multipliers(double t, std::size_t term, std::vector<cplx>& m) const;

    symbols::SeparableSymbol symbol_;
    weights::DegeneracySpec spec_;
    PeriodicGrid grid_;
    double eps_;
    std::shared_ptr<Fft> fft_;
    // coeff_at_[term][j] = a_term(x_j) for x-dependent terms.
    std::vector<std::vector<Matrix>> coeff_at_;
    std::vector<double> jbeta_inv_;
};

} // namespace degenhyp::solver
