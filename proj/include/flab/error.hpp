#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace flab {

enum class ErrorCode {
    InvalidArgument,
    ParseError,
    NonConvergent,
    MissingEnvelope,
    NotStabilized,
    NotIntegrable,
    NoValidPairing,
    NotCauchy,
    NegativeTransform,
    PreconditionViolated,
    ConfigParse,
    UnknownCheck,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the toolkit carries one of the codes above so
/// callers (and the CLI exit path) can branch on the kind of failure.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

inline void require(bool condition, ErrorCode code, const std::string& what)
{
    if (!condition) {
        throw Error(code, what);
    }
}

} // namespace flab
