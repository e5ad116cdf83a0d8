#include "error.hpp"

namespace svdmark {

const char* error_code_name(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::Ok: return "Ok";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::DimensionError: return "DimensionError";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::DegenerateKey: return "DegenerateKey";
    case ErrorCode::InvalidKey: return "InvalidKey";
    case ErrorCode::MalformedSideInfo: return "MalformedSideInfo";
    case ErrorCode::CodecError: return "CodecError";
    case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::UnsupportedVersion: return "UnsupportedVersion";
    case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

} // namespace svdmark
