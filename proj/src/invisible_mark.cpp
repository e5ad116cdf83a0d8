#include "invisible_mark.hpp"

#include "analysis.hpp"
#include "error.hpp"

#include <cmath>

namespace svdmark {

CommittedPayload commit_payload(const Matrix& watermark, const Identity& id) {
    WatermarkSplit split = split_watermark(watermark);
    Quantized q = quantize(split.components.matrix);
    const MaskMatrix mask = derive_mask(id, watermark.rows(), watermark.cols());
    return {xor_mask(q.bytes, mask), q.params, std::move(split.v_w)};
}

Marked embed_invisible(const Matrix& cover, const Matrix& watermark, const Identity& id, double alpha) {
    require_same_shape(cover, watermark, "embed_invisible: cover vs watermark");
    if (!std::isfinite(alpha) || alpha <= 0.0)
        fail(ErrorCode::InvalidParameter, "alpha must be positive");

    CommittedPayload payload = commit_payload(watermark, id);
    SvdFactors f = svd(cover);
    const Matrix s1 = f.s + alpha * to_matrix(payload.masked);
    Matrix marked = reconstruct(f.u, s1, f.v);

    SideInfo info{std::move(f.u), std::move(f.s), std::move(f.v), std::move(payload.v_w),
                  alpha,          cover.rows(),   cover.cols(),   Scheme::HashCode,
                  payload.quant};
    return {std::move(marked), std::move(info)};
}

ByteMatrix recover_masked_bytes(const Matrix& marked, const SideInfo& info) {
    if (info.scheme != Scheme::HashCode)
        fail(ErrorCode::MalformedSideInfo, "side info belongs to the SemiBlind scheme");
    if (!info.quant)
        fail(ErrorCode::MalformedSideInfo, "HashCode side info lacks quantization parameters");
    return round_to_bytes(recover_payload(marked, info));
}

Matrix extract_invisible(const Matrix& marked, const SideInfo& info, const Identity& id) {
    const ByteMatrix masked = recover_masked_bytes(marked, info);
    const ByteMatrix bytes = xor_mask(masked, derive_mask(id, info.rows, info.cols));
    return dequantize(bytes, *info.quant) * info.v_w.transposed();
}

VerificationReport verify_invisible(const Matrix& marked, const SideInfo& info, const Identity& id,
                                    const Matrix& claimed, double threshold) {
    if (!(threshold > 0.0 && threshold < 1.0))
        fail(ErrorCode::InvalidParameter, "verification threshold must lie in (0, 1)");
    const Matrix w_star = extract_invisible(marked, info, id);
    const double nc = normalized_correlation(w_star, claimed);
    return {nc, nc >= threshold ? Decision::Verified : Decision::Rejected, threshold};
}

} // namespace svdmark
