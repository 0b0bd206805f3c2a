#pragma once

#include <stdexcept>
#include <string>

namespace centprune {

// Every failure the library can report; the CLI maps any Error to exit code 1.
enum class ErrorCode {
    // npy parsing
    BadMagic,
    BadHeader,
    UnsupportedDtype,
    FortranOrderUnsupported,
    ShapeMismatch,
    NonFiniteValue,
    // manifest
    SchemaError,
    DanglingReference,
    ShapeConflict,
    MissingFile,
    // numerics
    DimensionMismatch,
    ZeroMatrix,
    NoConvergence,
    // selection / planning
    InvalidRatio,
    TooFewFilters,
    TooLarge,
    InvalidCounts,
    EmptyLayer,
    UnknownLayer,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

} // namespace centprune
