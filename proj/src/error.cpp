#include "colorpart/error.hpp"

namespace colorpart {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::EmptySpec: return "EmptySpec";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::FirstModulusNotOne: return "FirstModulusNotOne";
        case ErrorCode::NonIncreasingModuli: return "NonIncreasingModuli";
        case ErrorCode::NonPositiveMultiplicity: return "NonPositiveMultiplicity";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::WindowUndefined: return "WindowUndefined";
        case ErrorCode::TooLarge: return "TooLarge";
        case ErrorCode::NonPositive: return "NonPositive";
        case ErrorCode::InsufficientData: return "InsufficientData";
        case ErrorCode::BudgetExceeded: return "BudgetExceeded";
        case ErrorCode::EtaOutOfWindow: return "EtaOutOfWindow";
        case ErrorCode::PreconditionFailed: return "PreconditionFailed";
        case ErrorCode::QuadratureFailure: return "QuadratureFailure";
        case ErrorCode::RadiusTooSmall: return "RadiusTooSmall";
    }
    return "Unknown";
}

}  // namespace colorpart
