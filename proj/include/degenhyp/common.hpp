#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace degenhyp {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
/// Points of R^n (x, xi, unit covectors).
using Vec = Eigen::VectorXd;

enum class ErrorKind {
    Domain,
    Data,
    Validation,
    ConstantMultiplicity,
    Symmetrizability,
    DisjointSpectra,
    StrictHyperbolicity,
    DegenerateRoot,
    UnsupportedStructure,
    SizeMismatch,
    Singular,
    Stiffness,
    Divergence,
    Fit,
    Capability,
};

[[nodiscard]] const char* to_string(ErrorKind kind) noexcept;

/// Single exception type for the library; `kind()` tells callers which
/// contract was violated.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what);

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// <xi> = (1 + |xi|^2)^{1/2}
[[nodiscard]] inline double japanese(double xi_norm) noexcept {
    return std::sqrt(1.0 + xi_norm * xi_norm);
}

/// <xi>_K = (K^2 + |xi|^2)^{1/2}
[[nodiscard]] inline double japanese(double xi_norm, double K) noexcept {
    return std::sqrt(K * K + xi_norm * xi_norm);
}

[[nodiscard]] inline Vec vec1(double v) {
    Vec out(1);
    out(0) = v;
    return out;
}

} // namespace degenhyp
