#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace amm {

enum class ErrorCode {
    InvalidValue,       // a type invariant was violated at construction
    UnknownAsset,
    EmptyReserve,
    PoolExhausted,
    NonPositiveInput,
    SupplyExceeded,
    NonFiniteRule,
    OutOfRange,
    FOutOfRange,
    NonPositiveXi,
    UnbalancedDeposit,
    SharesExceeded,
    ConfigInvalid,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Domain error raised by every engine in the library.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace amm
