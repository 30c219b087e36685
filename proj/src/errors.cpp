#include "opc/errors.hpp"

namespace opc {

const char* error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::ConfigError: return "ConfigError";
        case ErrorKind::InvalidParameter: return "InvalidParameter";
        case ErrorKind::DivisionByZeroPolynomial: return "DivisionByZeroPolynomial";
        case ErrorKind::QuasiDefiniteViolation: return "QuasiDefiniteViolation";
        case ErrorKind::SobolevDegeneracy: return "SobolevDegeneracy";
        case ErrorKind::DegenerateNorm: return "DegenerateNorm";
        case ErrorKind::DivisionByZeroCoefficient: return "DivisionByZeroCoefficient";
        case ErrorKind::NotStronglyClassical: return "NotStronglyClassical";
        case ErrorKind::UnderdeterminedInitials: return "UnderdeterminedInitials";
        case ErrorKind::NotCaseII: return "NotCaseII";
        case ErrorKind::InconsistentStructure: return "InconsistentStructure";
        case ErrorKind::SingularMkSystem: return "SingularMkSystem";
        case ErrorKind::ZeroM2: return "ZeroM2";
        case ErrorKind::InvariantViolation: return "InvariantViolation";
    }
    return "Unknown";
}

namespace {

std::string compose(ErrorKind kind, const std::string& precondition,
                    const std::optional<long>& index, const std::string& detail) {
    std::string msg = error_kind_name(kind);
    if (index) msg += " at n=" + std::to_string(*index);
    msg += ": " + precondition;
    if (!detail.empty()) msg += " (" + detail + ")";
    return msg;
}

}  // namespace

Error::Error(ErrorKind kind, std::string precondition, std::optional<long> index,
             std::string detail)
    : std::runtime_error(compose(kind, precondition, index, detail)),
      kind_(kind),
      precondition_(std::move(precondition)),
      index_(index),
      detail_(std::move(detail)) {}

}  // namespace opc
