#pragma once

#include <stdexcept>
#include <string>

namespace coefid {

/// Error categories raised by the library. Each maps to one violated
/// precondition or hypothesis; the message names the offending quantity.
enum class ErrorKind {
    InvalidArgument,
    StencilTooSmall,
    OutOfRange,
    DegenerateIntersection,
    ImageMismatch,
    SingularSystem,
    ShiftMismatch,
    MeshConditionViolated,
    GridTooCoarse,
    MonotonicityViolation,
    InsufficientData,
    ConfigError,
};

/// Human readable name of an error kind.
inline const char* to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::StencilTooSmall: return "StencilTooSmall";
        case ErrorKind::OutOfRange: return "OutOfRange";
        case ErrorKind::DegenerateIntersection: return "DegenerateIntersection";
        case ErrorKind::ImageMismatch: return "ImageMismatch";
        case ErrorKind::SingularSystem: return "SingularSystem";
        case ErrorKind::ShiftMismatch: return "ShiftMismatch";
        case ErrorKind::MeshConditionViolated: return "MeshConditionViolated";
        case ErrorKind::GridTooCoarse: return "GridTooCoarse";
        case ErrorKind::MonotonicityViolation: return "MonotonicityViolation";
        case ErrorKind::InsufficientData: return "InsufficientData";
        case ErrorKind::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

/// Single exception type carrying an ErrorKind tag.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Throw an Error of the given kind unless cond holds.
inline void require(bool cond, ErrorKind kind, const std::string& what) {
    if (!cond) throw Error(kind, what);
}

}  // namespace coefid
