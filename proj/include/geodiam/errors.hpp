#pragma once

#include <stdexcept>
#include <string>

namespace geodiam {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed input text.
struct ParseError : Error {
    using Error::Error;
};

/// Well-formed input describing an invalid domain.
struct ValidationError : Error {
    ValidationError(std::string code, const std::string& what) : Error(what), code(std::move(code)) {}
    std::string code;
};

/// A module invariant failed at runtime.
struct InvariantViolation : Error {
    using Error::Error;
};

struct DegenerateEverywhere : Error {
    using Error::Error;
};

struct OverlappingCurves : Error {
    using Error::Error;
};

struct UnreachableVertex : Error {
    using Error::Error;
};

struct ResolutionTooCoarse : Error {
    using Error::Error;
};

struct GenerationFailed : Error {
    using Error::Error;
};

} // namespace geodiam
