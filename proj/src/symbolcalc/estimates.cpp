#include "degenhyp/symbolcalc/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace degenhyp::symbols {

namespace {

void enumerate(int dim, int max_total, std::vector<int>& cur, std::size_t pos, std::vector<std::vector<int>>& out) {
    if (pos == cur.size()) {
        out.push_back(cur);
        return;
    }
    int used = 0;
    for (std::size_t i = 0; i < pos; ++i) used += cur[i];
    for (int v = 0; used + v <= max_total; ++v) {
        cur[pos] = v;
        enumerate(dim, max_total, cur, pos + 1, out);
    }
    cur[pos] = 0;
}

std::vector<std::vector<int>> multi_indices(int dim, int max_total) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(static_cast<std::size_t>(dim), 0);
    enumerate(dim, max_total, cur, 0, out);
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        int sa = 0, sb = 0;
        for (int v : a) sa += v;
        for (int v : b) sb += v;
        return sa < sb;
    });
    return out;
}

int total(const std::vector<int>& a) {
    int s = 0;
    for (int v : a) s += v;
    return s;
}

double binom(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Packed coordinates: [t, x_1..x_n, xi_1..xi_n].
struct Differ {
    const SymbolFn& a;
    double T;
    int n;

    Matrix eval(const Vec& p) const {
        Matrix v = a(p(0), p.segment(1, n), p.segment(1 + n, n));
        if (!v.allFinite()) {
            std::ostringstream os;
            os << "non-finite symbol value at t=" << p(0) << ", x=" << p.segment(1, n).transpose()
               << ", xi=" << p.segment(1 + n, n).transpose();
            throw Error(ErrorKind::Data, os.str());
        }
        return v;
    }

    Matrix deriv(const Vec& p, std::vector<int> ord, const Vec& h) const {
        std::size_t i = 0;
        while (i < ord.size() && ord[i] == 0) ++i;
        if (i == ord.size()) return eval(p);
        const int k = ord[i];
        ord[i] = 0;
        const double hi = h(static_cast<Eigen::Index>(i));
        // Offsets in units of hi: central, or one-sided when t would leave [0, T].
        double shift = 0.5 * k;
        if (i == 0) {
            if (p(0) - shift * hi < 0.0) shift = static_cast<double>(k);
            else if (p(0) + shift * hi > T) shift = 0.0;
        }
        Matrix acc;
        for (int r = 0; r <= k; ++r) {
            Vec q = p;
            q(static_cast<Eigen::Index>(i)) += (shift - r) * hi;
            const double w = ((r % 2) ? -1.0 : 1.0) * binom(k, r);
            Matrix v = deriv(q, ord, h);
            if (r == 0) acc = w * v;
            else acc += w * v;
        }
        return acc / std::pow(hi, k);
    }
};

struct Index {
    int j;
    std::vector<int> alpha;
    std::vector<int> beta;
};

std::vector<double> constants(const SymbolFn& a, const std::vector<SymbolOrders>& orders,
                              const weights::DegeneracySpec& spec, const weights::GridSpec& gspec,
                              const std::vector<Index>& indices) {
    const auto grid = weights::build_grid(gspec);
    const weights::Cutoff cut;
    const int n = static_cast<int>(grid.x.front().size());
    if (grid.xi_directions.front().size() != n)
        throw Error(ErrorKind::SizeMismatch, "x and xi dimensions differ");
    const double beta = spec.beta_star();
    Differ d{a, spec.T(), n};
    std::vector<double> C(indices.size(), 0.0);
    Vec p(1 + 2 * n), h(1 + 2 * n);
    for (const auto& x : grid.x) {
        for (double t : grid.t) {
            for (const auto& dir : grid.xi_directions) {
                for (double r : grid.xi_radius) {
                    const Vec xi = r * dir;
                    const double jx = japanese(r);
                    p(0) = t;
                    p.segment(1, n) = x;
                    p.segment(1 + n, n) = xi;
                    h(0) = 1e-3 * (t + std::pow(jx, -beta));
                    h.segment(1, n).setConstant(1e-3);
                    h.segment(1 + n, n).setConstant(1e-3 * jx);
                    const auto w = weights::weight_pair(spec, cut, t, r);
                    const double logh = 1.0 + std::abs(std::log(w.h_bar));
                    for (std::size_t k = 0; k < indices.size(); ++k) {
                        const auto& ix = indices[k];
                        std::vector<int> ord(1 + 2 * static_cast<std::size_t>(n), 0);
                        ord[0] = ix.j;
                        for (int c = 0; c < n; ++c) {
                            ord[1 + c] = ix.alpha[c];
                            ord[1 + n + c] = ix.beta[c];
                        }
                        const double val = d.deriv(p, ord, h).norm();
                        double weight = 0.0;
                        for (const auto& o : orders) {
                            weight += std::pow(w.g_bar, o.m) * std::pow(w.h_bar, o.eta - o.m + ix.j) *
                                      std::pow(jx, -total(ix.beta)) * std::pow(logh, o.log_power + total(ix.alpha));
                        }
                        C[k] = std::max(C[k], val / weight);
                    }
                }
            }
        }
    }
    return C;
}

std::string join(const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ';';
        s += std::to_string(v[i]);
    }
    return s;
}

} // namespace

std::string EstimateReport::csv() const {
    std::ostringstream os;
    os.precision(10);
    os << "j,alpha,beta,C,verdict\n";
    for (const auto& e : entries)
        os << e.j << ',' << join(e.alpha) << ',' << join(e.beta) << ',' << e.C << ',' << (e.pass ? "pass" : "fail")
           << '\n';
    return os.str();
}

EstimateReport estimate_constants(const SymbolFn& a, const std::vector<SymbolOrders>& orders,
                                  const weights::DegeneracySpec& spec, const weights::GridSpec& grid,
                                  MaxOrders max_orders) {
    if (orders.empty()) throw Error(ErrorKind::Validation, "estimate_constants needs at least one order pair");
    if (max_orders.J < 0 || max_orders.A < 0 || max_orders.B < 0)
        throw Error(ErrorKind::Validation, "derivative orders must be nonnegative");
    if (grid.x_points.empty()) throw Error(ErrorKind::Validation, "empty x grid");
    const int n = static_cast<int>(grid.x_points.front().size());
    std::vector<Index> indices;
    for (int j = 0; j <= max_orders.J; ++j)
        for (const auto& al : multi_indices(n, max_orders.A))
            for (const auto& be : multi_indices(n, max_orders.B)) indices.push_back({j, al, be});

    const auto base = constants(a, orders, spec, grid, indices);
    const auto refined = constants(a, orders, spec, grid.refined(), indices);
    EstimateReport rep;
    rep.grid = grid.describe();
    rep.pass = true;
    for (std::size_t k = 0; k < indices.size(); ++k) {
        EstimateEntry e;
        e.j = indices[k].j;
        e.alpha = indices[k].alpha;
        e.beta = indices[k].beta;
        e.C = base[k];
        e.C_refined = refined[k];
        e.pass = std::isfinite(e.C_refined) && e.C_refined <= 1.1 * e.C + 1e-8;
        rep.pass = rep.pass && e.pass;
        rep.entries.push_back(std::move(e));
    }
    return rep;
}

EstimateReport estimate_constants(const SymbolFn& a, const SymbolOrders& orders, const weights::DegeneracySpec& spec,
                                  const weights::GridSpec& grid, MaxOrders max_orders) {
    return estimate_constants(a, std::vector<SymbolOrders>{orders}, spec, grid, max_orders);
}

EllipticityMargin ellipticity_margin(const SymbolFn& a, const SymbolOrders& orders,
                                     const weights::DegeneracySpec& spec, const weights::GridSpec& gspec,
                                     double tolerance) {
    const auto grid = weights::build_grid(gspec);
    const weights::Cutoff cut;
    double c1 = std::numeric_limits<double>::infinity();
    for (const auto& x : grid.x)
        for (double t : grid.t)
            for (const auto& dir : grid.xi_directions)
                for (double r : grid.xi_radius) {
                    const Matrix v = a(t, x, r * dir);
                    if (v.rows() != v.cols()) throw Error(ErrorKind::SizeMismatch, "ellipticity needs a square symbol");
                    const auto w = weights::weight_pair(spec, cut, t, r);
                    const double unit = std::pow(w.g_bar, orders.m) * std::pow(w.h_bar, orders.eta - orders.m);
                    c1 = std::min(c1, std::abs(v.determinant()) / std::pow(unit, static_cast<double>(v.rows())));
                }
    return {c1, c1 > tolerance};
}

} // namespace degenhyp::symbols
