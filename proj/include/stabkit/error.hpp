#pragma once

#include <stdexcept>
#include <string>

namespace stabkit {

enum class ErrorCode {
    GroupMismatch,     // operands live in different groups
    CodomainMismatch,  // scalar vs group-valued codomain mixed
    NotDivisible,      // group is not uniquely 2-divisible
    Bounded,           // group is bounded, no unboundedness witness
    DoublingBounded,   // 2X is bounded, no doubling witness
    ZeroExcluded,      // construction requires a nonzero point
    UnsupportedDomain, // operation not defined for this group shape
    EmptyWindow,
    EmptyGrid,
    InfeasibleSearch,
    InvalidArgument,
    ParseError,
    VerifyFailed,
    InvariantViolation, // internal consistency check tripped
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

} // namespace stabkit
