#include "side_info.hpp"

#include "error.hpp"

#include <cmath>
#include <string>

namespace svdmark {

const char* scheme_name(Scheme scheme) noexcept {
    return scheme == Scheme::HashCode ? "HashCode" : "SemiBlind";
}

void validate(const SideInfo& info) {
    const auto m = info.rows;
    const auto n = info.cols;
    if (m == 0 || n == 0)
        fail(ErrorCode::MalformedSideInfo, "side info has zero extent");
    if (info.u.rows() != m || !info.u.is_square() || info.v.rows() != n || !info.v.is_square()
        || info.s.rows() != m || info.s.cols() != n || info.v_w.rows() != n || !info.v_w.is_square())
        fail(ErrorCode::DimensionError, "side info factors are not conformable with " + std::to_string(m) + "x"
                                            + std::to_string(n));
    if (!std::isfinite(info.alpha) || info.alpha < 0.0)
        fail(ErrorCode::InvalidParameter, "side info alpha must be finite and non-negative");
    if (info.scheme == Scheme::HashCode && !info.quant)
        fail(ErrorCode::MalformedSideInfo, "HashCode side info lacks quantization parameters");
    if (info.scheme == Scheme::SemiBlind && info.quant)
        fail(ErrorCode::MalformedSideInfo, "SemiBlind side info carries quantization parameters");
    if (info.quant && !(info.quant->hi >= info.quant->lo))
        fail(ErrorCode::MalformedSideInfo, "quantization range has hi < lo");
    constexpr double tol = 1e-8;
    if (orthogonality_residual(info.u) > tol || orthogonality_residual(info.v) > tol)
        fail(ErrorCode::MalformedSideInfo, "side info singular vectors are not orthogonal");
}

} // namespace svdmark
