#include "degenhyp/systems/delta_bound.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "degenhyp/linalg.hpp"

namespace degenhyp::systems {

namespace {

std::string join(const Vec& v) {
    std::ostringstream os;
    os.precision(17);
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (i) os << ';';
        os << v(i);
    }
    return os.str();
}

} // namespace

double DeltaBound::delta_max() const {
    return delta.empty() ? 0.0 : *std::max_element(delta.begin(), delta.end());
}

double DeltaBound::delta_min() const {
    return delta.empty() ? 0.0 : *std::min_element(delta.begin(), delta.end());
}

std::string DeltaBound::csv() const {
    std::ostringstream os;
    os.precision(17);
    os << "x,delta,loss,argmax_block,argmax_xi\n";
    for (std::size_t i = 0; i < x.size(); ++i)
        os << join(x[i]) << ',' << delta[i] << ',' << loss[i] << ',' << argmax_block[i] << ',' << join(argmax_xi[i])
           << '\n';
    return os.str();
}

DeltaBound delta_bound_system(const FirstOrderSystem& sys, const SymmetrizerPair& pair,
                              const std::vector<Vec>& x_grid, const std::vector<Vec>& xi_samples) {
    if (xi_samples.empty()) throw Error(ErrorKind::Validation, "no covector samples");
    const auto sizes = pair.block_sizes;
    const auto off = linalg::block_offsets(sizes);
    const double bl = sys.spec.beta_star() * sys.spec.l_star();
    DeltaBound out;
    for (const auto& x : x_grid) {
        double best = -std::numeric_limits<double>::infinity();
        int best_block = -1;
        Vec best_xi = xi_samples.front();
        std::vector<double> per_block(sizes.size(), -std::numeric_limits<double>::infinity());
        for (const auto& xh : xi_samples) {
            const auto cp = conjugated_pair(sys, pair, x, xh);
            const Matrix& E = cp.effective;
            const bool block_diag = linalg::offdiag_block_norm(E, sizes) <= 1e-10 * std::max(1.0, E.norm());
            if (block_diag) {
                for (std::size_t j = 0; j < sizes.size(); ++j) {
                    const double v = linalg::lambda_max_re(E.block(off[j], off[j], sizes[j], sizes[j]));
                    per_block[j] = std::max(per_block[j], v);
                    if (v > best) {
                        best = v;
                        best_block = static_cast<int>(j);
                        best_xi = xh;
                    }
                }
            } else {
                const double v = linalg::lambda_max_re(E);
                if (v > best) {
                    best = v;
                    best_block = -1;
                    best_xi = xh;
                }
            }
        }
        out.x.push_back(x);
        out.delta.push_back(best);
        out.loss.push_back(bl * best);
        out.argmax_block.push_back(best_block);
        out.argmax_xi.push_back(best_xi);
        out.block_max.push_back(per_block);
    }
    return out;
}

double strict_diagonal_delta(const FirstOrderSystem& sys, const SymmetrizerPair& pair, const Vec& x,
                             const std::vector<Vec>& xi_samples) {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& xh : xi_samples) {
        const auto cp = conjugated_pair(sys, pair, x, xh);
        for (Eigen::Index j = 0; j < cp.B1.rows(); ++j) best = std::max(best, cp.B1(j, j).real());
    }
    return best;
}

} // namespace degenhyp::systems
