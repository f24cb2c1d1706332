#include "degenhyp/solver/analysis.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace degenhyp::solver {

namespace {

double shell_rms(const Matrix& state, const PeriodicGrid& grid, int k, int col) {
    double s = 0.0;
    int count = 0;
    for (int sign : {1, -1}) {
        if (sign < 0 && (k == 0 || k == grid.n() / 2)) continue;
        s += std::norm(state(grid.index_of(sign * k), col));
        ++count;
    }
    return std::sqrt(s / count);
}

} // namespace

double weighted_norm(const SpectralTrajectory& traj, int s, double delta) {
    if (s < 0) throw Error(ErrorKind::Domain, "s must be >= 0");
    if (s > 2) throw Error(ErrorKind::Capability, "weighted_norm supports s <= 2");
    if (traj.states.empty()) return 0.0;
    if (!traj.op) throw Error(ErrorKind::Capability, "trajectory carries no operator");
    const auto& spec = traj.op->spec();
    const auto& xi = traj.op->grid().frequencies();
    const weights::Cutoff cut;
    const int l = spec.l_star();
    std::vector<double> sq(traj.times.size(), 0.0);
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const double t = traj.times[i];
        for (int j = 0; j <= s; ++j) {
            const Matrix D = traj.time_derivative(i, j);
            for (int k = 0; k < D.rows(); ++k) {
                const auto w = weights::weight_pair(spec, cut, t, std::abs(xi[static_cast<std::size_t>(k)]));
                const double mult = std::pow(w.g, s - j) * std::pow(w.h, (s + delta) * l);
                sq[i] += mult * mult * D.row(k).squaredNorm();
            }
        }
        sq[i] *= 2.0 * std::numbers::pi;
    }
    if (sq.size() == 1) return 0.0;
    double acc = 0.0;
    for (std::size_t i = 1; i < sq.size(); ++i) acc += 0.5 * (sq[i] + sq[i - 1]) * (traj.times[i] - traj.times[i - 1]);
    // Trajectory grids usually start after t = 0; the first interval uses the first sample.
    acc += sq.front() * traj.times.front();
    return std::sqrt(acc);
}

QMultiplier default_q(const weights::DegeneracySpec& spec, const weights::Cutoff& cut, double C) {
    return [spec, cut, C](double t, double xi) {
        const auto w = weights::weight_pair(spec, cut, t, std::abs(xi));
        return C * w.h * w.h / w.g;
    };
}

EnergyRatio energy_ratio(const SpectralTrajectory& traj, const Forcing& F, const QMultiplier& q) {
    if (traj.states.empty()) throw Error(ErrorKind::Validation, "empty trajectory");
    if (!traj.op) throw Error(ErrorKind::Capability, "trajectory carries no operator");
    using boost::math::quadrature::gauss_kronrod;
    const auto& xi = traj.op->grid().frequencies();
    const int n = static_cast<int>(xi.size());
    const int N = static_cast<int>(traj.states.front().cols());

    const Matrix U0 = traj.times.front() == 0.0 ? traj.states.front() : Matrix();
    if (U0.size() == 0) throw Error(ErrorKind::Validation, "trajectory must include t = 0");
    const double base = U0.squaredNorm();

    std::vector<double> p(static_cast<std::size_t>(n), 0.0);
    EnergyRatio out;
    double forcing = 0.0;
    double forcing_raw = 0.0;
    double prev_f = 0.0, prev_f_raw = 0.0;
    auto forcing_sq = [&](double t, bool conj) {
        if (!F) return 0.0;
        const Matrix f = F(t);
        if (f.rows() != n || f.cols() != N) throw Error(ErrorKind::SizeMismatch, "forcing shape differs from state");
        if (!conj) return f.squaredNorm();
        double s = 0.0;
        for (int k = 0; k < n; ++k) s += std::exp(-2.0 * p[static_cast<std::size_t>(k)]) * f.row(k).squaredNorm();
        return s;
    };
    prev_f = forcing_sq(0.0, true);
    prev_f_raw = forcing_sq(0.0, false);
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const double t = traj.times[i];
        if (i > 0) {
            const double ta = traj.times[i - 1];
            if (q) {
                for (int k = 0; k < n; ++k) {
                    const double x = xi[static_cast<std::size_t>(k)];
                    p[static_cast<std::size_t>(k)] +=
                        gauss_kronrod<double, 15>::integrate([&](double s) { return q(s, x); }, ta, t, 10, 1e-12);
                }
            }
            const double f = forcing_sq(t, true);
            const double f_raw = forcing_sq(t, false);
            forcing += 0.5 * (f + prev_f) * (t - ta);
            forcing_raw += 0.5 * (f_raw + prev_f_raw) * (t - ta);
            prev_f = f;
            prev_f_raw = f_raw;
        }
        const Matrix& U = traj.states[i];
        double w = 0.0;
        for (int k = 0; k < n; ++k) w += std::exp(-2.0 * p[static_cast<std::size_t>(k)]) * U.row(k).squaredNorm();
        const double denom = base + forcing;
        const double denom_raw = base + forcing_raw;
        if (denom > 0.0) out.max_ratio = std::max(out.max_ratio, w / denom);
        if (denom_raw > 0.0) out.max_unconjugated = std::max(out.max_unconjugated, U.squaredNorm() / denom_raw);
    }
    return out;
}

DecayFit decay_exponent(const Matrix& state, int lo, int hi) {
    const int n = static_cast<int>(state.rows());
    const PeriodicGrid grid(n);
    if (lo < 1 || hi >= n / 2 || hi < lo) throw Error(ErrorKind::Fit, "fit band outside the resolved range");
    if (hi - lo + 1 < 8) throw Error(ErrorKind::Fit, "fit band has fewer than 8 shells");
    std::vector<double> xs, ys;
    for (int k = lo; k <= hi; ++k) {
        double s = 0.0;
        for (int c = 0; c < state.cols(); ++c) s += std::pow(shell_rms(state, grid, k, c), 2);
        const double rms = std::sqrt(s / static_cast<double>(state.cols()));
        if (!(rms > 0.0) || !std::isfinite(rms)) throw Error(ErrorKind::Fit, "non-positive shell magnitude");
        xs.push_back(std::log(japanese(k)));
        ys.push_back(std::log(rms));
    }
    const auto m = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= m;
    my /= m;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    const double slope = sxy / sxx;
    DecayFit fit;
    fit.sigma_hat = -slope - 0.5;
    fit.r2 = syy > 0.0 ? sxy * sxy / (sxx * syy) : 1.0;
    fit.shells = static_cast<int>(xs.size());
    return fit;
}

LossResult empirical_loss(const Problem& problem, double sigma, double t_probe, std::uint64_t seed,
                          const LossOptions& opts) {
    if (!(t_probe > 0.0)) throw Error(ErrorKind::Domain, "t_probe must be > 0");
    const PeriodicGrid grid(opts.n_modes);
    const CVector phi = make_data(grid, sigma, seed);
    const Matrix U0 = problem.initial_state(grid, phi);
    const auto traj = solve_cauchy(problem.symbol, problem.spec, grid, U0, {}, opts.eps, {t_probe}, opts.tol);
    const Matrix u = problem.observable(grid, t_probe, traj.states.back());
    LossResult r;
    r.band_lo = opts.band_lo > 0 ? opts.band_lo : opts.n_modes / 32;
    r.band_hi = opts.band_hi > 0 ? opts.band_hi : opts.n_modes / 8;
    const auto fit = decay_exponent(u, r.band_lo, r.band_hi);
    r.sigma_hat = fit.sigma_hat;
    r.r2 = fit.r2;
    r.loss = sigma - fit.sigma_hat;
    r.steps = traj.accepted_steps;
    return r;
}

std::string trajectory_csv(const SpectralTrajectory& traj) {
    std::ostringstream os;
    os.precision(17);
    os << "t,component,shell,magnitude\n";
    if (!traj.op) return os.str();
    const auto& grid = traj.op->grid();
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const Matrix& U = traj.states[i];
        for (int c = 0; c < U.cols(); ++c)
            for (int k = 0; k <= grid.n() / 2; ++k)
                os << traj.times[i] << ',' << c << ',' << k << ',' << shell_rms(U, grid, k, c) << '\n';
    }
    return os.str();
}

} // namespace degenhyp::solver
