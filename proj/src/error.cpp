#include "msf/error.hpp"

namespace msf {

std::string_view to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::GridTooSmall: return "GridTooSmall";
    case ErrorCode::FormatError: return "FormatError";
    case ErrorCode::NonPositiveSample: return "NonPositiveSample";
    case ErrorCode::OverflowInExp: return "OverflowInExp";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::PaleyWienerFail: return "PaleyWienerFail";
    case ErrorCode::FNearSingular: return "FNearSingularOnGrid";
    case ErrorCode::SolveFailed: return "SolveFailed";
    case ErrorCode::LemmaViolated: return "LemmaViolated";
    case ErrorCode::KNotPD: return "KNotPD";
    case ErrorCode::DetVanishes: return "DetVanishes";
    case ErrorCode::StageFailed: return "StageFailed";
    case ErrorCode::LevelFailed: return "LevelFailed";
    }
    return "Unknown";
}

bool is_usage_error(ErrorCode code)
{
    switch (code) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::GridTooSmall:
    case ErrorCode::FormatError:
        return true;
    default:
        return false;
    }
}

Error::Error(ErrorCode code, const std::string& message, ErrorContext context)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      context_(context),
      detail_(message)
{
}

}  // namespace msf
