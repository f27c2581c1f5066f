#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace insider {

enum class ErrorCode {
    NonPositive,
    NegativeRate,
    NotFinite,
    OutOfDomain,
    Overflow,
    IndexOverflow,
    BadSampleCount,
    UnknownTrader,
    DegenerateEstimate,
    InvalidSpec,
};

std::string_view to_string(ErrorCode code);

/// Exception carrying a machine-readable code and, where relevant, the
/// name of the offending field.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string field, const std::string& message)
        : std::runtime_error(message), code_(code), field_(std::move(field)) {}

    ErrorCode code() const noexcept { return code_; }
    const std::string& field() const noexcept { return field_; }

private:
    ErrorCode code_;
    std::string field_;
};

}  // namespace insider
