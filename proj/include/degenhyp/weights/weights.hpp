#pragma once

#include <functional>

#include "degenhyp/common.hpp"
#include "degenhyp/weights/cutoff.hpp"

namespace degenhyp::weights {

/// Degeneracy lambda(t) = t^l on [0, T]; beta = 1/(l+1).
class DegeneracySpec {
public:
    DegeneracySpec(int l_star, double T);

    [[nodiscard]] int l_star() const noexcept { return l_; }
    [[nodiscard]] double T() const noexcept { return T_; }
    [[nodiscard]] double beta_star() const noexcept { return 1.0 / (l_ + 1); }

    /// Throws a domain error unless 0 <= t <= T.
    void check_time(double t) const;

private:
    int l_;
    double T_;
};

struct Degeneracy {
    double lambda;
    double Lambda;
};

/// lambda(t) = t^l and its primitive Lambda(t) = beta t^{l+1}.
[[nodiscard]] Degeneracy degeneracy(const DegeneracySpec& spec, double t);

struct CutoffPair {
    double chi_plus;
    double chi_minus;
};

/// chi_plus = chi(Lambda(t) <xi>), chi_minus = 1 - chi_plus.
[[nodiscard]] CutoffPair cutoffs(const DegeneracySpec& spec, const Cutoff& cut, double t, double xi_norm);
[[nodiscard]] CutoffPair cutoffs(const DegeneracySpec& spec, const Cutoff& cut, double t, const Vec& xi);

struct WeightValues {
    double g;
    double h;
    double g_bar;
    double h_bar;
};

/// g = chi- <xi>^beta + chi+ lambda <xi>,  h = chi- <xi>^beta + chi+ / t,
/// g_bar = lambda <xi> + <xi>^beta,       h_bar = 1 / (t + <xi>^{-beta}).
[[nodiscard]] WeightValues weight_pair(const DegeneracySpec& spec, const Cutoff& cut, double t, double xi_norm);
[[nodiscard]] WeightValues weight_pair(const DegeneracySpec& spec, const Cutoff& cut, double t, const Vec& xi);

/// Exact d/dt of g and h (not D_t = -i d/dt).
struct WeightRates {
    double dg_dt;
    double dh_dt;
};
[[nodiscard]] WeightRates weight_rates(const DegeneracySpec& spec, const Cutoff& cut, double t, double xi_norm);

using DeltaFn = std::function<double(const Vec& x)>;

/// Theta = chi_K- <xi>_K^{beta delta(x) l} + chi_K+ t^{-delta(x) l}, where the
/// cutoffs use <xi>_K = (K^2 + |xi|^2)^{1/2} in place of <xi>.
[[nodiscard]] double theta_symbol(const DegeneracySpec& spec, const Cutoff& cut, double K, const DeltaFn& delta,
                                  double t, const Vec& x, const Vec& xi);

/// d/dt Theta for constant delta.
[[nodiscard]] double theta_dt(const DegeneracySpec& spec, const Cutoff& cut, double K, double delta, double t,
                              double xi_norm);

} // namespace degenhyp::weights
