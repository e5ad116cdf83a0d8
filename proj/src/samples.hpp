#pragma once

#include "color_adapt.hpp"
#include "matrix.hpp"

#include <cstdint>
#include <optional>
#include <string_view>

namespace svdmark {

// Deterministic stand-ins for the classic test photographs, so experiments
// run without shipping image files.
enum class SampleKind {
    Portrait, // smooth shading with a few soft features (Lena-like)
    Texture,  // dense high-contrast multi-scale texture (Baboon-like)
    Plane,    // dark aircraft silhouette over a bright sky gradient
};

std::optional<SampleKind> sample_kind_from_name(std::string_view name);
const char* sample_kind_name(SampleKind kind) noexcept;

/// Values lie in [0, 255]; identical (kind, rows, cols, seed) give identical bits.
Matrix sample_image(SampleKind kind, std::size_t rows, std::size_t cols, std::uint64_t seed);

/// Colour portrait whose channels stay inside [lo, hi].
RgbImage sample_rgb(std::size_t rows, std::size_t cols, std::uint64_t seed, double lo = 0.0, double hi = 255.0);

} // namespace svdmark
