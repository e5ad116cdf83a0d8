#pragma once

#include "matrix.hpp"
#include "side_info.hpp"

namespace svdmark {

/// A_wa = U_w * S_w of a watermark's SVD; A_wa * V_w^T reproduces the watermark.
struct PrincipalComponents {
    Matrix matrix;
};

struct WatermarkSplit {
    PrincipalComponents components;
    Matrix v_w;
};

/// Zero alpha is an identity embedding and only accepted when asked for.
enum class AlphaPolicy { Strict, AllowZero };

struct Marked {
    Matrix image;
    SideInfo info;
};

WatermarkSplit split_watermark(const Matrix& watermark);

/// marked = U (S + alpha A_wa) V^T where U S V^T is the cover's SVD.
Marked embed(const Matrix& cover, const Matrix& watermark, double alpha,
             AlphaPolicy policy = AlphaPolicy::Strict);

/// (U^T (marked - U S V^T) V) / alpha. Scheme-agnostic; the hash scheme
/// receives its masked payload through this.
Matrix recover_payload(const Matrix& marked, const SideInfo& info);

/// Distorted principal components A*_wa of a SemiBlind mark.
PrincipalComponents extract_components(const Matrix& marked, const SideInfo& info);

/// W* = A*_wa V_w^T.
Matrix extract(const Matrix& marked, const SideInfo& info);

/// P* = A*_wa V_ref^T, looking for a reference image through its right
/// singular vectors.
Matrix detect_reference(const PrincipalComponents& a_wa_star, const Matrix& v_ref);

} // namespace svdmark
