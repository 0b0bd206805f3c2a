#include "centprune/error.hpp"

namespace centprune {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::BadMagic: return "BadMagic";
        case ErrorCode::BadHeader: return "BadHeader";
        case ErrorCode::UnsupportedDtype: return "UnsupportedDtype";
        case ErrorCode::FortranOrderUnsupported: return "FortranOrderUnsupported";
        case ErrorCode::ShapeMismatch: return "ShapeMismatch";
        case ErrorCode::NonFiniteValue: return "NonFiniteValue";
        case ErrorCode::SchemaError: return "SchemaError";
        case ErrorCode::DanglingReference: return "DanglingReference";
        case ErrorCode::ShapeConflict: return "ShapeConflict";
        case ErrorCode::MissingFile: return "MissingFile";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::ZeroMatrix: return "ZeroMatrix";
        case ErrorCode::NoConvergence: return "NoConvergence";
        case ErrorCode::InvalidRatio: return "InvalidRatio";
        case ErrorCode::TooFewFilters: return "TooFewFilters";
        case ErrorCode::TooLarge: return "TooLarge";
        case ErrorCode::InvalidCounts: return "InvalidCounts";
        case ErrorCode::EmptyLayer: return "EmptyLayer";
        case ErrorCode::UnknownLayer: return "UnknownLayer";
    }
    return "Error";
}

} // namespace centprune
