#include "degenhyp/common.hpp"

namespace degenhyp {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::Domain: return "domain error";
        case ErrorKind::Data: return "data error";
        case ErrorKind::Validation: return "validation error";
        case ErrorKind::ConstantMultiplicity: return "constant-multiplicity error";
        case ErrorKind::Symmetrizability: return "symmetrizability error";
        case ErrorKind::DisjointSpectra: return "disjoint-spectra error";
        case ErrorKind::StrictHyperbolicity: return "strict-hyperbolicity error";
        case ErrorKind::DegenerateRoot: return "degenerate-root error";
        case ErrorKind::UnsupportedStructure: return "unsupported-structure error";
        case ErrorKind::SizeMismatch: return "size mismatch";
        case ErrorKind::Singular: return "singular matrix";
        case ErrorKind::Stiffness: return "stiffness error";
        case ErrorKind::Divergence: return "divergence error";
        case ErrorKind::Fit: return "fit error";
        case ErrorKind::Capability: return "capability error";
    }
    return "error";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

} // namespace degenhyp
