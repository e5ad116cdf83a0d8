#pragma once

#include "hash_stream.hpp"
#include "matrix.hpp"
#include "semi_blind.hpp"
#include "side_info.hpp"

namespace svdmark {

/// Watermark principal components quantized to bytes and XOR-masked with h_id.
struct CommittedPayload {
    ByteMatrix masked;
    QuantParams quant;
    Matrix v_w;
};

CommittedPayload commit_payload(const Matrix& watermark, const Identity& id);

/// marked = U (S + alpha (q(A_wa) xor h_id)) V^T. The returned side info has
/// the HashCode tag and the quantization range but neither the id nor the mask.
Marked embed_invisible(const Matrix& cover, const Matrix& watermark, const Identity& id, double alpha);

/// Masked bytes read back from a marked image: payload rounded to the nearest
/// integer and clamped to 0..255.
ByteMatrix recover_masked_bytes(const Matrix& marked, const SideInfo& info);

Matrix extract_invisible(const Matrix& marked, const SideInfo& info, const Identity& id);

enum class Decision { Verified, Rejected };

struct VerificationReport {
    double nc_score = 0.0;
    Decision decision = Decision::Rejected;
    double threshold = 0.0;
};

inline constexpr double default_verify_threshold = 0.9;

VerificationReport verify_invisible(const Matrix& marked, const SideInfo& info, const Identity& id,
                                    const Matrix& claimed, double threshold = default_verify_threshold);

} // namespace svdmark
