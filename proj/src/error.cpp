#include "sami/error.hpp"

namespace sami {

std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::DuplicateService: return "DuplicateService";
    case ErrorCode::StandardViolation: return "StandardViolation";
    case ErrorCode::NoAdmissibleNode: return "NoAdmissibleNode";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::IncompatibleReplacement: return "IncompatibleReplacement";
    case ErrorCode::UncoverableGoal: return "UncoverableGoal";
    case ErrorCode::NonCloudNode: return "NonCloudNode";
    case ErrorCode::NonDealerNode: return "NonDealerNode";
    case ErrorCode::EmptyOpinions: return "EmptyOpinions";
    case ErrorCode::ChainTooShort: return "ChainTooShort";
    case ErrorCode::OutOfOrderEvent: return "OutOfOrderEvent";
    case ErrorCode::NotBillable: return "NotBillable";
    case ErrorCode::PreconditionViolation: return "PreconditionViolation";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, std::string message, std::vector<std::string> details)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      details_(std::move(details)) {}

}  // namespace sami
