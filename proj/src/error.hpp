#pragma once

#include <stdexcept>
#include <string>

namespace svdmark {

// Numeric values are part of the C ABI (see svdmark.h); do not reorder.
enum class ErrorCode : int {
    Ok = 0,
    InvalidInput = 1,
    DimensionError = 2,
    InvalidParameter = 3,
    DegenerateKey = 4,
    InvalidKey = 5,
    MalformedSideInfo = 6,
    CodecError = 7,
    UnsupportedFormat = 8,
    UnsupportedVersion = 9,
    IoError = 10,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

} // namespace svdmark
