#include "degenhyp/systems/symmetrizer.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/SVD>

#include "degenhyp/linalg.hpp"

namespace degenhyp::systems {

namespace {

void check_gaps(const std::vector<double>& mu) {
    double scale = 0.0;
    for (double m : mu) scale = std::max(scale, std::abs(m));
    const double tol = kGapTol * std::max(scale, 1e-300);
    for (std::size_t i = 0; i < mu.size(); ++i)
        for (std::size_t j = i + 1; j < mu.size(); ++j)
            if (std::abs(mu[i] - mu[j]) < tol) {
                std::ostringstream os;
                os << "roots " << i << " and " << j << " coincide (" << mu[i] << ", " << mu[j] << ")";
                throw Error(ErrorKind::ConstantMultiplicity, os.str());
            }
}

} // namespace

Matrix symmetrizer_at(const Matrix& A0, const std::vector<double>& mu, const std::vector<int>& mult) {
    const auto n = A0.rows();
    if (A0.cols() != n) throw Error(ErrorKind::SizeMismatch, "A0 must be square");
    check_gaps(mu);
    const double scale = std::max(1.0, A0.norm());
    Matrix M0(n, n);
    Eigen::Index row = 0;
    for (std::size_t h = 0; h < mu.size(); ++h) {
        const Matrix K = (A0 - mu[h] * Matrix::Identity(n, n)).adjoint();
        Eigen::JacobiSVD<Matrix> svd(K, Eigen::ComputeFullV);
        const auto& s = svd.singularValues();
        const int m = mult[h];
        // Singular values come sorted descending; the last m span the left eigenspace.
        if (s(n - m) > 1e-7 * scale) {
            std::ostringstream os;
            os << "root " << h << " (mu = " << mu[h] << ") has fewer than " << m << " independent left eigenvectors";
            throw Error(ErrorKind::Symmetrizability, os.str());
        }
        for (int c = 0; c < m; ++c) {
            CVector w = svd.matrixV().col(n - m + c);
            if (m == 1) {
                Eigen::Index imax = 0;
                w.cwiseAbs().maxCoeff(&imax);
                w *= std::conj(w(imax)) / std::abs(w(imax));
                w /= w.norm();
            }
            M0.row(row++) = w.adjoint();
        }
    }
    return M0;
}

SymmetrizerPair symmetrizer_from_roots(const FirstOrderSystem& sys, const std::vector<double>& t_samples,
                                       const std::vector<Vec>& x_samples, const std::vector<Vec>& xi_samples) {
    sys.validate();
    const auto mult = sys.block_sizes();
    for (double t : t_samples)
        for (const auto& x : x_samples)
            for (const auto& xh : xi_samples) {
                const Matrix A0 = sys.A0(t, x, xh);
                const auto mu = sys.root_values(t, x, xh);
                const Matrix M0 = symmetrizer_at(A0, mu, mult);
                Eigen::PartialPivLU<Matrix> lu(M0);
                if (std::abs(lu.determinant()) < 1e-12) throw Error(ErrorKind::Singular, "M0 is singular at a sample");
                const Matrix B0 = M0 * A0 * lu.inverse();
                Matrix D = Matrix::Zero(sys.N, sys.N);
                Eigen::Index o = 0;
                for (std::size_t h = 0; h < mu.size(); ++h)
                    for (int c = 0; c < mult[h]; ++c, ++o) D(o, o) = mu[h];
                if ((B0 - D).norm() > 1e-8 * std::max(1.0, A0.norm()))
                    throw Error(ErrorKind::Symmetrizability, "M0 A0 M0^{-1} is not diag(mu_h) at a sample");
            }
    SymmetrizerPair pair;
    pair.block_sizes = mult;
    pair.M0 = [sys, mult](double t, const Vec& x, const Vec& xh) {
        return symmetrizer_at(sys.A0(t, x, xh), sys.root_values(t, x, xh), mult);
    };
    return pair;
}

Matrix solve_sylvester(const Matrix& E, const Matrix& F, const Matrix& G) {
    const auto p = E.rows();
    const auto q = F.rows();
    if (E.cols() != p || F.cols() != q || G.rows() != p || G.cols() != q)
        throw Error(ErrorKind::SizeMismatch, "Sylvester operand shapes");
    const Matrix Ip = Matrix::Identity(p, p);
    Matrix K = Matrix::Zero(p * q, p * q);
    // vec(T F) = (F^T (x) I_p) vec T,  vec(E T) = (I_q (x) E) vec T
    for (Eigen::Index a = 0; a < q; ++a)
        for (Eigen::Index b = 0; b < q; ++b) {
            K.block(a * p, b * p, p, p) += F(b, a) * Ip;
            if (a == b) K.block(a * p, b * p, p, p) -= E;
        }
    Eigen::FullPivLU<Matrix> lu(K);
    if (!lu.isInvertible()) throw Error(ErrorKind::DisjointSpectra, "E and F share an eigenvalue");
    const CVector vecG = Eigen::Map<const CVector>(G.data(), p * q);
    const CVector x = lu.solve(vecG);
    return Eigen::Map<const Matrix>(x.data(), p, q);
}

Matrix sylvester_block_offdiag(const std::vector<std::pair<double, int>>& blocks, const Matrix& B1) {
    std::vector<int> sizes;
    std::vector<double> mu;
    for (const auto& [m, s] : blocks) {
        mu.push_back(m);
        sizes.push_back(s);
    }
    const auto off = linalg::block_offsets(sizes);
    if (B1.rows() != off.back() || B1.cols() != off.back())
        throw Error(ErrorKind::SizeMismatch, "B1 size does not match the block structure");
    double scale = 0.0;
    for (double m : mu) scale = std::max(scale, std::abs(m));
    const double tol = kGapTol * std::max(scale, 1e-300);
    Matrix P1 = Matrix::Zero(B1.rows(), B1.cols());
    for (std::size_t j = 0; j < blocks.size(); ++j)
        for (std::size_t k = 0; k < blocks.size(); ++k) {
            if (j == k) continue;
            const double gap = mu[j] - mu[k];
            if (std::abs(gap) < tol) throw Error(ErrorKind::DisjointSpectra, "coincident block eigenvalues");
            const auto Bjk = B1.block(off[j], off[k], sizes[j], sizes[k]);
            // B1_jk + P1_jk mu_k - mu_j P1_jk = 0
            if (sizes[j] == 1 && sizes[k] == 1) {
                P1(off[j], off[k]) = Bjk(0, 0) / gap;
            } else {
                const Matrix E = mu[j] * Matrix::Identity(sizes[j], sizes[j]);
                const Matrix F = mu[k] * Matrix::Identity(sizes[k], sizes[k]);
                P1.block(off[j], off[k], sizes[j], sizes[k]) = solve_sylvester(E, F, -Matrix(Bjk));
            }
        }
    return P1;
}

ConjugatedPair conjugated_pair(const FirstOrderSystem& sys, const SymmetrizerPair& pair, const Vec& x,
                               const Vec& xi_hat) {
    const Matrix M0 = pair.M0(0.0, x, xi_hat);
    Eigen::PartialPivLU<Matrix> lu(M0);
    if (std::abs(lu.determinant()) < 1e-12) throw Error(ErrorKind::Singular, "M0 is singular");
    const Matrix M0inv = lu.inverse();
    ConjugatedPair out;
    out.B0 = M0 * sys.A0(0.0, x, xi_hat) * M0inv;
    out.B1 = M0 * sys.A1(x, xi_hat) * M0inv;
    if (pair.M1) {
        out.K = pair.M1(x, xi_hat) * M0inv;
    } else {
        const auto mu = sys.root_values(0.0, x, xi_hat);
        std::vector<std::pair<double, int>> blocks;
        for (std::size_t h = 0; h < mu.size(); ++h) blocks.emplace_back(mu[h], pair.block_sizes[h]);
        out.K = sylvester_block_offdiag(blocks, out.B1);
    }
    out.effective = linalg::hermitian_part(out.B1 + linalg::commutator(out.K, out.B0));
    return out;
}

} // namespace degenhyp::systems
