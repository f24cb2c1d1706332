#include "degenhyp/weights/weights.hpp"

#include <cmath>
#include <sstream>

namespace degenhyp::weights {

DegeneracySpec::DegeneracySpec(int l_star, double T) : l_(l_star), T_(T) {
    if (l_star < 1) throw Error(ErrorKind::Validation, "l_star must be >= 1");
    if (!(T > 0.0) || !std::isfinite(T)) throw Error(ErrorKind::Validation, "T must be positive and finite");
}

void DegeneracySpec::check_time(double t) const {
    if (!(t >= 0.0 && t <= T_)) {
        std::ostringstream os;
        os << "t = " << t << " outside [0, " << T_ << "]";
        throw Error(ErrorKind::Domain, os.str());
    }
}

Degeneracy degeneracy(const DegeneracySpec& spec, double t) {
    spec.check_time(t);
    const double lam = std::pow(t, spec.l_star());
    return {lam, spec.beta_star() * lam * t};
}

CutoffPair cutoffs(const DegeneracySpec& spec, const Cutoff& cut, double t, double xi_norm) {
    const auto d = degeneracy(spec, t);
    const double cp = cut(d.Lambda * japanese(xi_norm));
    return {cp, 1.0 - cp};
}

CutoffPair cutoffs(const DegeneracySpec& spec, const Cutoff& cut, double t, const Vec& xi) {
    return cutoffs(spec, cut, t, xi.norm());
}

WeightValues weight_pair(const DegeneracySpec& spec, const Cutoff& cut, double t, double xi_norm) {
    const auto d = degeneracy(spec, t);
    const double jx = japanese(xi_norm);
    const double jb = std::pow(jx, spec.beta_star());
    const double cp = cut(d.Lambda * jx);
    const double cm = 1.0 - cp;
    WeightValues w{};
    w.g = cm * jb + cp * d.lambda * jx;
    // chi+ > 0 forces t > 0, so 1/t is only formed when it is finite.
    w.h = cp > 0.0 ? cm * jb + cp / t : jb;
    w.g_bar = d.lambda * jx + jb;
    w.h_bar = 1.0 / (t + 1.0 / jb);
    return w;
}

WeightValues weight_pair(const DegeneracySpec& spec, const Cutoff& cut, double t, const Vec& xi) {
    return weight_pair(spec, cut, t, xi.norm());
}

WeightRates weight_rates(const DegeneracySpec& spec, const Cutoff& cut, double t, double xi_norm) {
    const auto d = degeneracy(spec, t);
    const int l = spec.l_star();
    const double jx = japanese(xi_norm);
    const double jb = std::pow(jx, spec.beta_star());
    const double s = d.Lambda * jx;
    const double cp = cut(s);
    const double dchi = cut.derivative(s, 1) * d.lambda * jx;
    const double dlam = l == 1 ? 1.0 : l * std::pow(t, l - 1);
    WeightRates r{};
    r.dg_dt = dchi * (d.lambda * jx - jb) + cp * dlam * jx;
    r.dh_dt = cp > 0.0 || dchi != 0.0 ? dchi * (1.0 / t - jb) - cp / (t * t) : 0.0;
    return r;
}

double theta_symbol(const DegeneracySpec& spec, const Cutoff& cut, double K, const DeltaFn& delta, double t,
                    const Vec& x, const Vec& xi) {
    if (!(K > 0.0)) throw Error(ErrorKind::Domain, "K must be positive");
    const auto d = degeneracy(spec, t);
    const double dl = delta(x) * spec.l_star();
    const double jk = japanese(xi.norm(), K);
    const double cp = cut(d.Lambda * jk);
    const double lo = (1.0 - cp) * std::pow(jk, spec.beta_star() * dl);
    return cp > 0.0 ? lo + cp * std::pow(t, -dl) : lo;
}

double theta_dt(const DegeneracySpec& spec, const Cutoff& cut, double K, double delta, double t, double xi_norm) {
    if (!(K > 0.0)) throw Error(ErrorKind::Domain, "K must be positive");
    const auto d = degeneracy(spec, t);
    const double dl = delta * spec.l_star();
    const double jk = japanese(xi_norm, K);
    const double s = d.Lambda * jk;
    const double cp = cut(s);
    const double dchi = cut.derivative(s, 1) * d.lambda * jk;
    if (cp == 0.0 && dchi == 0.0) return 0.0;
    const double tp = std::pow(t, -dl);
    return dchi * (tp - std::pow(jk, spec.beta_star() * dl)) - dl * cp * tp / t;
}

} // namespace degenhyp::weights
