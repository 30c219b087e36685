#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace opc {

enum class ErrorKind {
    ConfigError,
    InvalidParameter,
    DivisionByZeroPolynomial,
    QuasiDefiniteViolation,
    SobolevDegeneracy,
    DegenerateNorm,
    DivisionByZeroCoefficient,
    NotStronglyClassical,
    UnderdeterminedInitials,
    NotCaseII,
    InconsistentStructure,
    SingularMkSystem,
    ZeroM2,
    InvariantViolation,
};

const char* error_kind_name(ErrorKind kind);

// Every failure names the precondition it violated and, when the failure is
// tied to a sequence position, the index n at which it happened.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string precondition, std::optional<long> index = std::nullopt,
          std::string detail = {});

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& precondition() const noexcept { return precondition_; }
    std::optional<long> index() const noexcept { return index_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    ErrorKind kind_;
    std::string precondition_;
    std::optional<long> index_;
    std::string detail_;
};

}  // namespace opc
