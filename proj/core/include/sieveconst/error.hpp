#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sieveconst {

enum class ErrorKind {
    DomainTooSmall,
    InvalidTolerance,
    OutOfDomain,
    InvalidStep,
    QuadratureFailure,
    InvalidDomain,
    InvalidParams,
    UnknownTerm,
    NoFeasiblePoint,
    SingularSystem,
    InvalidInput,
    ResourceLimit,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

// thrown when adaptive quadrature gives up; keeps the best estimate it had
class QuadratureFailure : public Error {
public:
    QuadratureFailure(const std::string& what, double estimate, double error_bound)
        : Error(ErrorKind::QuadratureFailure, what), estimate_(estimate), error_(error_bound) {}

    double estimate() const noexcept { return estimate_; }
    double error_bound() const noexcept { return error_; }

private:
    double estimate_;
    double error_;
};

} // namespace sieveconst
