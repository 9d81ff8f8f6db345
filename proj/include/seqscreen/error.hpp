#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace seqscreen {

enum class ErrorCode {
    InvalidProbability,
    UndefinedPosterior,
    UninformativeTest,
    TargetUnreachable,
    InvalidTarget,
    ConflictingCertainty,
    NoUniqueIntersection,
    NumericalFailure,
    QuadratureFailure,
    InvalidArgument,
    ValidationError,
    SessionNotFound,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above so that
// the CLI and the HTTP service can map it to an exit status / response code.
class ScreeningError : public std::runtime_error {
public:
    ScreeningError(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace seqscreen
