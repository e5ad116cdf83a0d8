#pragma once

#include "matrix.hpp"

#include <optional>

namespace svdmark {

enum class Scheme { SemiBlind, HashCode };

const char* scheme_name(Scheme scheme) noexcept;

/// Affine 8-bit quantization range of a principal-component matrix.
struct QuantParams {
    double lo = 0.0;
    double hi = 0.0;
    bool degenerate = false;

    friend bool operator==(const QuantParams&, const QuantParams&) = default;
};

/// Detector key material: the cover's embed-time factors, the watermark's
/// right singular vectors and the scaling factor. Never holds the hash id or
/// the mask.
struct SideInfo {
    Matrix u;
    Matrix s;
    Matrix v;
    Matrix v_w;
    double alpha = 0.0;
    std::size_t rows = 0;
    std::size_t cols = 0;
    Scheme scheme = Scheme::SemiBlind;
    std::optional<QuantParams> quant;

    friend bool operator==(const SideInfo&, const SideInfo&) = default;
};

/// Structural checks shared by extraction and the key-file loader: conformable
/// factors, finite non-negative alpha, quant present iff HashCode, u and v
/// orthogonal within 1e-8.
void validate(const SideInfo& info);

} // namespace svdmark
