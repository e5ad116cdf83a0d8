#pragma once

#include "hash_stream.hpp"
#include "matrix.hpp"
#include "semi_blind.hpp"
#include "side_info.hpp"

#include <optional>
#include <vector>

namespace svdmark {

struct RgbImage {
    Matrix r;
    Matrix g;
    Matrix b;

    /// DimensionError unless the three planes share a shape.
    RgbImage(Matrix r, Matrix g, Matrix b);

    std::size_t rows() const noexcept { return r.rows(); }
    std::size_t cols() const noexcept { return r.cols(); }

    friend bool operator==(const RgbImage&, const RgbImage&) = default;
};

/// L = max(R, G, B) + min(R, G, B), kept in the widened range 0..510.
struct LuminancePlane {
    Matrix l;
};

enum class ChannelStrategy { Luminance, BlueChannel, PerChannel };

const char* strategy_name(ChannelStrategy strategy) noexcept;

LuminancePlane luminance_split(const RgbImage& img);

/// Shifts every channel of a pixel by (L' - L) / 2, which makes max + min equal
/// L' exactly, then clips each channel to 0..255.
RgbImage luminance_merge(const RgbImage& img, const LuminancePlane& l_new);

/// One SideInfo for Luminance and BlueChannel, three (R, G, B) for PerChannel.
struct SideInfoBundle {
    ChannelStrategy strategy = ChannelStrategy::Luminance;
    std::vector<SideInfo> infos;
};

struct MarkedColor {
    RgbImage image;
    SideInfoBundle bundle;
};

/// Applies the mono-channel scheme to the strategy's plane(s). The id must be
/// given for HashCode and absent for SemiBlind.
MarkedColor embed_color(const RgbImage& img, const Matrix& watermark, ChannelStrategy strategy, Scheme scheme,
                        double alpha, const std::optional<Identity>& id = std::nullopt,
                        AlphaPolicy policy = AlphaPolicy::Strict);

/// PerChannel returns the mean of the three channel estimates.
Matrix extract_color(const RgbImage& img, const SideInfoBundle& bundle, ChannelStrategy strategy,
                     const std::optional<Identity>& id = std::nullopt);

} // namespace svdmark
