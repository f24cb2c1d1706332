#include "degenhyp/linalg.hpp"

#include <Eigen/Eigenvalues>

namespace degenhyp::linalg {

Matrix hermitian_part(const Matrix& q) {
    return 0.5 * (q + q.adjoint());
}

Matrix commutator(const Matrix& a, const Matrix& b) {
    return a * b - b * a;
}

double lambda_max_re(const Matrix& q) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(q), Eigen::EigenvaluesOnly);
    return es.eigenvalues().maxCoeff();
}

Matrix companion(const CVector& coeffs) {
    const auto m = coeffs.size();
    Matrix c = Matrix::Zero(m, m);
    for (Eigen::Index i = 0; i + 1 < m; ++i) c(i, i + 1) = 1.0;
    for (Eigen::Index j = 0; j < m; ++j) c(m - 1, j) = -coeffs(j);
    return c;
}

CVector polynomial_roots(const CVector& coeffs) {
    if (coeffs.size() == 0) return CVector(0);
    Eigen::ComplexEigenSolver<Matrix> es(companion(coeffs), false);
    return es.eigenvalues();
}

PolyEval eval_monic(const CVector& coeffs, cplx tau) {
    // Horner with derivatives.
    cplx p = 1.0, d1 = 0.0, d2 = 0.0;
    for (Eigen::Index j = coeffs.size() - 1; j >= 0; --j) {
        d2 = d2 * tau + 2.0 * d1;
        d1 = d1 * tau + p;
        p = p * tau + coeffs(j);
    }
    return {p, d1, d2};
}

std::vector<int> block_offsets(const std::vector<int>& sizes) {
    std::vector<int> off(sizes.size() + 1, 0);
    for (std::size_t i = 0; i < sizes.size(); ++i) off[i + 1] = off[i] + sizes[i];
    return off;
}

double offdiag_block_norm(const Matrix& m, const std::vector<int>& sizes) {
    const auto off = block_offsets(sizes);
    double acc = 0.0;
    for (std::size_t j = 0; j < sizes.size(); ++j) {
        for (std::size_t k = 0; k < sizes.size(); ++k) {
            if (j == k) continue;
            acc += m.block(off[j], off[k], sizes[j], sizes[k]).squaredNorm();
        }
    }
    return std::sqrt(acc);
}

} // namespace degenhyp::linalg
