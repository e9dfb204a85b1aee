#include "sieveconst/error.hpp"

namespace sieveconst {

std::string_view to_string(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::DomainTooSmall: return "domain-too-small";
    case ErrorKind::InvalidTolerance: return "invalid-tolerance";
    case ErrorKind::OutOfDomain: return "out-of-domain";
    case ErrorKind::InvalidStep: return "invalid-step";
    case ErrorKind::QuadratureFailure: return "quadrature-failure";
    case ErrorKind::InvalidDomain: return "invalid-domain";
    case ErrorKind::InvalidParams: return "invalid-params";
    case ErrorKind::UnknownTerm: return "unknown-term";
    case ErrorKind::NoFeasiblePoint: return "no-feasible-point";
    case ErrorKind::SingularSystem: return "singular-system";
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::ResourceLimit: return "resource-limit";
    }
    return "unknown";
}

} // namespace sieveconst
