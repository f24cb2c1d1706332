#include "degenhyp/weights/cutoff.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "degenhyp/common.hpp"

namespace degenhyp::weights {

namespace {

// Below this distance from the ends of (0,1), psi and all its derivatives are
// smaller than e^{-900} and are flushed to their limiting values.
constexpr double kFlush = 1.0 / 900.0;

// Truncated Taylor series in (u - u0): c[k] is the k-th Taylor coefficient.
using Jet = std::vector<double>;

Jet jet_div(const Jet& a, const Jet& b) {
    Jet q(a.size(), 0.0);
    for (std::size_t k = 0; k < a.size(); ++k) {
        double acc = a[k];
        for (std::size_t i = 1; i <= k; ++i) acc -= b[i] * q[k - i];
        q[k] = acc / b[0];
    }
    return q;
}

Jet jet_exp(const Jet& a) {
    Jet e(a.size(), 0.0);
    e[0] = std::exp(a[0]);
    for (std::size_t k = 1; k < a.size(); ++k) {
        double acc = 0.0;
        for (std::size_t i = 1; i <= k; ++i) acc += static_cast<double>(i) * a[i] * e[k - i];
        e[k] = acc / static_cast<double>(k);
    }
    return e;
}

// Taylor coefficients of psi at u in (0,1), up to `order`.
Jet psi_jet(double u, int order) {
    const std::size_t n = static_cast<std::size_t>(order) + 1;
    Jet one(n, 0.0);
    one[0] = 1.0;
    Jet uj(n, 0.0), vj(n, 0.0);
    uj[0] = u;
    vj[0] = 1.0 - u;
    if (n > 1) {
        uj[1] = 1.0;
        vj[1] = -1.0;
    }
    Jet neg_inv_u = jet_div(one, uj);
    Jet neg_inv_v = jet_div(one, vj);
    for (auto& c : neg_inv_u) c = -c;
    for (auto& c : neg_inv_v) c = -c;
    Jet fu = jet_exp(neg_inv_u);
    Jet fv = jet_exp(neg_inv_v);
    Jet den(n);
    for (std::size_t k = 0; k < n; ++k) den[k] = fu[k] + fv[k];
    return jet_div(fu, den);
}

} // namespace

Cutoff::Cutoff(int max_derivative) : max_derivative_(max_derivative) {
    if (max_derivative < 0)
        throw Error(ErrorKind::Domain, "cutoff derivative order must be nonnegative");
}

double Cutoff::operator()(double s) const noexcept {
    const double u = 2.0 * s - 1.0;
    if (u <= kFlush) return 0.0;
    if (u >= 1.0 - kFlush) return 1.0;
    // psi(u) = 1 / (1 + exp(1/u - 1/(1-u)))
    return 1.0 / (1.0 + std::exp(1.0 / u - 1.0 / (1.0 - u)));
}

double Cutoff::derivative(double s, int order) const {
    if (order < 0 || order > max_derivative_)
        throw Error(ErrorKind::Domain,
                    "cutoff derivative of order " + std::to_string(order) + " not supported (J_max = " +
                        std::to_string(max_derivative_) + ")");
    if (order == 0) return (*this)(s);
    const double u = 2.0 * s - 1.0;
    if (u <= kFlush || u >= 1.0 - kFlush) return 0.0;
    const Jet jet = psi_jet(u, order);
    double factorial = 1.0;
    for (int k = 2; k <= order; ++k) factorial *= k;
    return std::ldexp(jet[static_cast<std::size_t>(order)] * factorial, order);
}

} // namespace degenhyp::weights
