#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace colorpart {

enum class ErrorCode {
    // spec validation
    EmptySpec,
    LengthMismatch,
    FirstModulusNotOne,
    NonIncreasingModuli,
    NonPositiveMultiplicity,
    ParseError,
    WindowUndefined,
    // exact engine
    TooLarge,
    // asymptotic harness
    NonPositive,
    InsufficientData,
    // analysis lab
    BudgetExceeded,
    EtaOutOfWindow,
    PreconditionFailed,
    QuadratureFailure,
    RadiusTooSmall,
};

std::string_view to_string(ErrorCode code);

/// Structured failure: a machine-readable code plus a human-readable detail.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& detail)
        : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace colorpart
