#include "flab/error.hpp"

namespace flab {

std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NonConvergent: return "NonConvergent";
    case ErrorCode::MissingEnvelope: return "MissingEnvelope";
    case ErrorCode::NotStabilized: return "NotStabilized";
    case ErrorCode::NotIntegrable: return "NotIntegrable";
    case ErrorCode::NoValidPairing: return "NoValidPairing";
    case ErrorCode::NotCauchy: return "NotCauchy";
    case ErrorCode::NegativeTransform: return "NegativeTransform";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::ConfigParse: return "ConfigParse";
    case ErrorCode::UnknownCheck: return "UnknownCheck";
    }
    return "Unknown";
}

} // namespace flab
