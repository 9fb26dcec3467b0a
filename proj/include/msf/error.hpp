#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace msf {

enum class ErrorCode {
    // usage / input errors
    InvalidArgument,
    DimensionMismatch,
    GridTooSmall,
    FormatError,
    // numerical failures
    NonPositiveSample,
    OverflowInExp,
    NotHermitian,
    NotPositiveDefinite,
    PaleyWienerFail,
    FNearSingular,
    SolveFailed,
    LemmaViolated,
    KNotPD,
    DetVanishes,
    StageFailed,
    LevelFailed,
};

std::string_view to_string(ErrorCode code);

/// True for codes caused by bad input or configuration rather than by the numerics.
bool is_usage_error(ErrorCode code);

/// Where in a computation an error surfaced. Fields that do not apply stay empty.
struct ErrorContext {
    std::optional<long> node;   // grid node index
    std::optional<long> index;  // pivot / diagonal index / byte offset
    std::optional<long> stage;  // classic stage m
    std::optional<long> level;  // doubling block size at the failing level
    std::optional<long> block;  // doubling superblock index k
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message, ErrorContext context = {});

    ErrorCode code() const noexcept { return code_; }
    const ErrorContext& context() const noexcept { return context_; }
    /// Message without the code prefix.
    const std::string& detail() const noexcept { return detail_; }

private:
    ErrorCode code_;
    ErrorContext context_;
    std::string detail_;
};

}  // namespace msf
