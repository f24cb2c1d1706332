#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/numeric/odeint.hpp>

#include "degenhyp/solver/solver.hpp"

namespace degenhyp::solver {

namespace {

using State = std::vector<cplx>;
namespace odeint = boost::numeric::odeint;

constexpr cplx I(0.0, 1.0);

} // namespace

Matrix SpectralTrajectory::time_derivative(std::size_t i, int j) const {
    if (i >= states.size()) throw Error(ErrorKind::Domain, "trajectory index out of range");
    if (j == 0) return states[i];
    if (j > 2) throw Error(ErrorKind::Capability, "time derivatives beyond order 2 are not stored");
    if (!op) throw Error(ErrorKind::Capability, "trajectory carries no operator");
    const double t = times[i];
    Matrix AU;
    op->apply(t, states[i], AU);
    if (F) AU += F(t);
    if (j == 1) return AU;
    // D_t(A U + F) = (D_t A) U + A D_t U + D_t F
    const double T = op->spec().T();
    const double h = 1e-5 * std::max(t, 1e-2 * T);
    const double ta = std::max(0.0, t - h);
    const double tb = std::min(T, t + h);
    Matrix Aa, Ab, ADU;
    op->apply(ta, states[i], Aa);
    op->apply(tb, states[i], Ab);
    op->apply(t, AU, ADU);
    Matrix out = -I * (Ab - Aa) / (tb - ta) + ADU;
    if (F) out += -I * (F(tb) - F(ta)) / (tb - ta);
    return out;
}

SpectralTrajectory solve_cauchy(const symbols::SeparableSymbol& sys, const weights::DegeneracySpec& spec,
                                const PeriodicGrid& grid, const Matrix& U0, const Forcing& F, double eps,
                                const std::vector<double>& t_out, Tolerance tol) {
    const int n = grid.n();
    const int N = sys.N;
    if (U0.rows() != n || U0.cols() != N) throw Error(ErrorKind::SizeMismatch, "U0 must be n_modes x N");
    if (t_out.empty()) throw Error(ErrorKind::Validation, "no output times");
    for (std::size_t i = 0; i < t_out.size(); ++i) {
        spec.check_time(t_out[i]);
        if (i > 0 && !(t_out[i] > t_out[i - 1])) throw Error(ErrorKind::Validation, "output times must increase");
    }
    if (!(tol.rtol > 0.0) || !(tol.atol >= 0.0)) throw Error(ErrorKind::Validation, "bad tolerances");

    SpectralTrajectory traj;
    traj.op = std::make_shared<SpectralOperator>(sys, spec, grid, eps);
    traj.F = F;
    traj.eps = eps;
    traj.tol = tol;
    const auto op = traj.op;

    State x(U0.data(), U0.data() + static_cast<std::ptrdiff_t>(n) * N);
    auto rhs = [&](const State& u, State& dudt, double t) {
        const Eigen::Map<const Matrix> U(u.data(), n, N);
        Matrix AU;
        op->apply(t, U, AU);
        if (F) AU += F(t);
        Eigen::Map<Matrix>(dudt.data(), n, N) = I * AU;
    };
    // A zero absolute tolerance would divide 0 by 0 on identically zero modes.
    auto stepper = odeint::make_controlled(std::max(tol.atol, 1e-300), tol.rtol,
                                           odeint::runge_kutta_fehlberg78<State>());
    const double T = spec.T();
    double t = 0.0;
    double dt = 1e-3 * T;
    for (double target : t_out) {
        while (t < target) {
            double h = std::min(dt, target - t);
            const bool clamped = h < dt;
            const auto res = stepper.try_step(rhs, x, t, h);
            if (res == odeint::success) {
                ++traj.accepted_steps;
                dt = clamped ? std::max(dt, h) : h;
                if (std::abs(target - t) <= 1e-14 * T) t = target;
                for (const auto& v : x)
                    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
                        std::ostringstream os;
                        os << "non-finite state at t = " << t;
                        throw Error(ErrorKind::Divergence, os.str());
                    }
            } else {
                ++traj.rejected_steps;
                dt = h;
            }
            if (dt < 1e-14 * std::max(T, t) || traj.accepted_steps > 5'000'000) {
                std::ostringstream os;
                os << "step size underflow at t = " << t << " (dt = " << dt
                   << ", symbol bound = " << op->symbol_bound(t) << ")";
                throw Error(ErrorKind::Stiffness, os.str());
            }
        }
        traj.times.push_back(target);
        traj.states.push_back(Eigen::Map<const Matrix>(x.data(), n, N));
    }
    return traj;
}

} // namespace degenhyp::solver
