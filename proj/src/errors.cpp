#include "fieldmap/errors.hpp"

namespace fieldmap {

const char* to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::MalformedHeader: return "MalformedHeader";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::ValueOutOfRange: return "ValueOutOfRange";
    case ErrorKind::IoFailure: return "IoFailure";
    case ErrorKind::GridMismatch: return "GridMismatch";
    case ErrorKind::ThresholdOutOfRange: return "ThresholdOutOfRange";
    case ErrorKind::BadClassIndex: return "BadClassIndex";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::RotatedGridUnsupported: return "RotatedGridUnsupported";
    case ErrorKind::OpenRing: return "OpenRing";
    case ErrorKind::UnknownLabel: return "UnknownLabel";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::YearOrder: return "YearOrder";
    case ErrorKind::InsufficientYears: return "InsufficientYears";
    case ErrorKind::SpecInvalid: return "SpecInvalid";
    case ErrorKind::GeographicCrs: return "GeographicCrs";
    }
    return "UnknownError";
}

} // namespace fieldmap
