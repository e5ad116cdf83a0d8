#pragma once

#include "matrix.hpp"
#include "side_info.hpp"

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace svdmark {

/// rows x cols bytes, row-major. Tag keeps masks and payloads apart.
template <class Tag>
struct BasicByteMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::uint8_t> data;

    std::uint8_t operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
    friend bool operator==(const BasicByteMatrix&, const BasicByteMatrix&) = default;
};

using ByteMatrix = BasicByteMatrix<struct PayloadTag>;
using MaskMatrix = BasicByteMatrix<struct MaskTag>;

/// Secret key bytes, conventionally "name|nonce". The nonce is the caller's job.
class Identity {
public:
    explicit Identity(std::string_view text);
    explicit Identity(std::vector<std::uint8_t> bytes);

    std::span<const std::uint8_t> bytes() const noexcept { return bytes_; }

private:
    std::vector<std::uint8_t> bytes_;
};

/// h_id: SHA-256(id || counter) blocks, counter a 32-bit big-endian integer
/// starting at 0, concatenated and cut to rows * cols bytes, row-major.
MaskMatrix derive_mask(const Identity& id, std::size_t rows, std::size_t cols);

struct Quantized {
    ByteMatrix bytes;
    QuantParams params;
};

/// q = round(255 (a - lo) / (hi - lo)) with lo = min, hi = max. A constant
/// input quantizes to zeros with the degenerate flag set.
Quantized quantize(const Matrix& a);
Matrix dequantize(const ByteMatrix& b, const QuantParams& p);

ByteMatrix xor_mask(const ByteMatrix& b, const MaskMatrix& m);

/// Bytes viewed as reals (0..255), and reals rounded then clamped back to bytes.
Matrix to_matrix(const ByteMatrix& b);
ByteMatrix round_to_bytes(const Matrix& m);

} // namespace svdmark
