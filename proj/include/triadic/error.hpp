#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace triadic {

enum class ErrorKind {
    NonNormalized,
    ImpossibleObservation,
    DimensionMismatch,
    IndexOutOfRange,
    InvalidCounts,
    TooLarge,
    InvalidLoss,
    ImproperLoss,
    EmptyRegion,
    NotRegionBased,
    NotCoherent,
    ReplayFailed,
    SizeTooSmall,
    ParseError,
    ValidationError,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every recoverable failure in the library is reported as an Error carrying its kind.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace triadic
