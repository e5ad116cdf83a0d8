#include "hash_stream.hpp"

#include "error.hpp"

#include <openssl/evp.h>
#include <openssl/sha.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>

namespace svdmark {

namespace {

using DigestCtx = std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)>;

std::array<std::uint8_t, SHA256_DIGEST_LENGTH> block_digest(EVP_MD_CTX* ctx, std::span<const std::uint8_t> id,
                                                            std::uint32_t counter) {
    const std::array<std::uint8_t, 4> be{static_cast<std::uint8_t>(counter >> 24),
                                         static_cast<std::uint8_t>(counter >> 16),
                                         static_cast<std::uint8_t>(counter >> 8), static_cast<std::uint8_t>(counter)};
    std::array<std::uint8_t, SHA256_DIGEST_LENGTH> out{};
    unsigned int len = 0;
    if (EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1 || EVP_DigestUpdate(ctx, id.data(), id.size()) != 1
        || EVP_DigestUpdate(ctx, be.data(), be.size()) != 1 || EVP_DigestFinal_ex(ctx, out.data(), &len) != 1
        || len != out.size())
        fail(ErrorCode::InvalidKey, "SHA-256 digest failed");
    return out;
}

} // namespace

Identity::Identity(std::string_view text) : bytes_(text.begin(), text.end()) {
    if (bytes_.empty())
        fail(ErrorCode::InvalidKey, "identity must not be empty");
}

Identity::Identity(std::vector<std::uint8_t> bytes) : bytes_(std::move(bytes)) {
    if (bytes_.empty())
        fail(ErrorCode::InvalidKey, "identity must not be empty");
}

MaskMatrix derive_mask(const Identity& id, std::size_t rows, std::size_t cols) {
    if (rows == 0 || cols == 0)
        fail(ErrorCode::DimensionError, "mask extents must be positive");
    const std::size_t total = rows * cols;
    if (total / SHA256_DIGEST_LENGTH >= 0xFFFFFFFFu)
        fail(ErrorCode::DimensionError, "mask too large for a 32-bit block counter");

    DigestCtx ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
    if (!ctx)
        fail(ErrorCode::InvalidKey, "cannot allocate digest context");

    MaskMatrix mask{rows, cols, {}};
    mask.data.reserve(total);
    for (std::uint32_t counter = 0; mask.data.size() < total; ++counter) {
        const auto block = block_digest(ctx.get(), id.bytes(), counter);
        const std::size_t take = std::min(block.size(), total - mask.data.size());
        mask.data.insert(mask.data.end(), block.begin(), block.begin() + static_cast<std::ptrdiff_t>(take));
    }
    return mask;
}

Quantized quantize(const Matrix& a) {
    if (a.empty())
        fail(ErrorCode::InvalidInput, "quantize of an empty matrix");
    require_finite(a.data(), "quantize input");
    const auto [lo_it, hi_it] = std::minmax_element(a.data().begin(), a.data().end());
    QuantParams p{*lo_it, *hi_it, *lo_it == *hi_it};

    ByteMatrix b{a.rows(), a.cols(), std::vector<std::uint8_t>(a.size(), 0)};
    if (!p.degenerate) {
        const double scale = 255.0 / (p.hi - p.lo);
        auto src = a.data();
        for (std::size_t i = 0; i < src.size(); ++i)
            b.data[i] = static_cast<std::uint8_t>(std::clamp(std::round((src[i] - p.lo) * scale), 0.0, 255.0));
    }
    return {std::move(b), p};
}

Matrix dequantize(const ByteMatrix& b, const QuantParams& p) {
    if (b.rows == 0 || b.cols == 0 || b.data.size() != b.rows * b.cols)
        fail(ErrorCode::DimensionError, "byte matrix data does not match its extents");
    if (p.degenerate)
        return Matrix::constant(b.rows, b.cols, p.lo);
    const double step = (p.hi - p.lo) / 255.0;
    std::vector<double> out(b.data.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = p.lo + b.data[i] * step;
    return Matrix(b.rows, b.cols, std::move(out));
}

ByteMatrix xor_mask(const ByteMatrix& b, const MaskMatrix& m) {
    if (b.rows != m.rows || b.cols != m.cols || b.data.size() != m.data.size())
        fail(ErrorCode::DimensionError, "xor_mask: payload and mask shapes differ");
    ByteMatrix out = b;
    for (std::size_t i = 0; i < out.data.size(); ++i)
        out.data[i] ^= m.data[i];
    return out;
}

Matrix to_matrix(const ByteMatrix& b) {
    return Matrix(b.rows, b.cols, std::vector<double>(b.data.begin(), b.data.end()));
}

ByteMatrix round_to_bytes(const Matrix& m) {
    ByteMatrix out{m.rows(), m.cols(), std::vector<std::uint8_t>(m.size())};
    auto src = m.data();
    for (std::size_t i = 0; i < src.size(); ++i)
        out.data[i] = static_cast<std::uint8_t>(std::clamp(std::round(src[i]), 0.0, 255.0));
    return out;
}

} // namespace svdmark
