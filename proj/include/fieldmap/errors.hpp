#pragma once

#include <stdexcept>
#include <string>

namespace fieldmap {

enum class ErrorKind {
    MalformedHeader,
    DimensionMismatch,
    ValueOutOfRange,
    IoFailure,
    GridMismatch,
    ThresholdOutOfRange,
    BadClassIndex,
    InvalidConfig,
    RotatedGridUnsupported,
    OpenRing,
    UnknownLabel,
    EmptyInput,
    YearOrder,
    InsufficientYears,
    SpecInvalid,
    GeographicCrs,
};

const char* to_string(ErrorKind kind);

/// Library-wide exception. `kind()` identifies the failure class so callers
/// (and the CLI) can attribute errors without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace fieldmap
