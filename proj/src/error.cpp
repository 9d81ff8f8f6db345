#include "seqscreen/error.hpp"

namespace seqscreen {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidProbability: return "InvalidProbability";
        case ErrorCode::UndefinedPosterior: return "UndefinedPosterior";
        case ErrorCode::UninformativeTest: return "UninformativeTest";
        case ErrorCode::TargetUnreachable: return "TargetUnreachable";
        case ErrorCode::InvalidTarget: return "InvalidTarget";
        case ErrorCode::ConflictingCertainty: return "ConflictingCertainty";
        case ErrorCode::NoUniqueIntersection: return "NoUniqueIntersection";
        case ErrorCode::NumericalFailure: return "NumericalFailure";
        case ErrorCode::QuadratureFailure: return "QuadratureFailure";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::ValidationError: return "ValidationError";
        case ErrorCode::SessionNotFound: return "SessionNotFound";
    }
    return "Unknown";
}

}  // namespace seqscreen
