#include "semi_blind.hpp"

#include "error.hpp"

#include <cmath>

namespace svdmark {

namespace {

void check_alpha(double alpha, AlphaPolicy policy) {
    if (!std::isfinite(alpha) || alpha < 0.0)
        fail(ErrorCode::InvalidParameter, "alpha must be finite and non-negative");
    if (alpha == 0.0 && policy == AlphaPolicy::Strict)
        fail(ErrorCode::InvalidParameter, "alpha must be positive");
}

} // namespace

WatermarkSplit split_watermark(const Matrix& watermark) {
    SvdFactors f = svd(watermark);
    return {PrincipalComponents{f.u * f.s}, std::move(f.v)};
}

Marked embed(const Matrix& cover, const Matrix& watermark, double alpha, AlphaPolicy policy) {
    require_same_shape(cover, watermark, "embed: cover vs watermark");
    check_alpha(alpha, policy);

    SvdFactors f = svd(cover);
    WatermarkSplit split = split_watermark(watermark);
    const Matrix s1 = f.s + alpha * split.components.matrix;
    Matrix marked = reconstruct(f.u, s1, f.v);

    SideInfo info{std::move(f.u), std::move(f.s), std::move(f.v), std::move(split.v_w),
                  alpha,          cover.rows(),   cover.cols(),   Scheme::SemiBlind,
                  std::nullopt};
    return {std::move(marked), std::move(info)};
}

Matrix recover_payload(const Matrix& marked, const SideInfo& info) {
    validate(info);
    if (marked.rows() != info.rows || marked.cols() != info.cols)
        fail(ErrorCode::DimensionError, "marked image does not match side info dimensions");
    if (info.alpha == 0.0)
        fail(ErrorCode::DegenerateKey, "side info alpha is zero");

    const Matrix a1 = marked - reconstruct(info.u, info.s, info.v);
    return (1.0 / info.alpha) * (info.u.transposed() * a1 * info.v);
}

PrincipalComponents extract_components(const Matrix& marked, const SideInfo& info) {
    if (info.scheme != Scheme::SemiBlind)
        fail(ErrorCode::MalformedSideInfo, "side info belongs to the HashCode scheme; use the hash extractor");
    return {recover_payload(marked, info)};
}

Matrix extract(const Matrix& marked, const SideInfo& info) {
    const PrincipalComponents a_wa = extract_components(marked, info);
    return a_wa.matrix * info.v_w.transposed();
}

Matrix detect_reference(const PrincipalComponents& a_wa_star, const Matrix& v_ref) {
    if (!v_ref.is_square() || v_ref.rows() != a_wa_star.matrix.cols())
        fail(ErrorCode::DimensionError, "reference singular vectors do not match the components");
    if (orthogonality_residual(v_ref) > 1e-6)
        fail(ErrorCode::InvalidParameter, "reference singular vectors are not orthogonal");
    return a_wa_star.matrix * v_ref.transposed();
}

} // namespace svdmark
