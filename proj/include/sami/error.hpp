#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sami {

enum class ErrorCode {
    DuplicateService,
    StandardViolation,
    NoAdmissibleNode,
    NotFound,
    IncompatibleReplacement,
    UncoverableGoal,
    NonCloudNode,
    NonDealerNode,
    EmptyOpinions,
    ChainTooShort,
    OutOfOrderEvent,
    NotBillable,
    PreconditionViolation,
    ConfigError,
    ParseError,
    ValidationError,
};

std::string_view to_string(ErrorCode code);

// Single exception type for the library. `details` carries the structured
// payload of errors that report several items (violations, residual tags,
// config field paths).
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string message, std::vector<std::string> details = {});

    ErrorCode code() const noexcept { return code_; }
    const std::vector<std::string>& details() const noexcept { return details_; }

private:
    ErrorCode code_;
    std::vector<std::string> details_;
};

}  // namespace sami
