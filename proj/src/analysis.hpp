#pragma once

#include "matrix.hpp"

#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

namespace svdmark {

/// Returned by psnr when the two images are identical.
inline constexpr double psnr_identical = std::numeric_limits<double>::infinity();

/// 10 log10(255^2 / MSE).
double psnr(const Matrix& a, const Matrix& b);

struct Correlation {
    double value = 0.0;
    /// One of the inputs is constant; value is then 0.
    bool degenerate = false;
};

/// Pearson correlation of the mean-centred, flattened matrices.
Correlation correlation(const Matrix& a, const Matrix& b);
double normalized_correlation(const Matrix& a, const Matrix& b);

/// Seeded stream behind every stochastic attack and sample generator.
/// Engine: std::mt19937_64 (output sequence fixed by the C++ standard).
/// uniform(): top 53 bits of one engine output scaled by 2^-53, in [0, 1).
/// gaussian(): Box-Muller cosine branch on two uniforms,
///   sqrt(-2 ln(1 - u1)) cos(2 pi u2); one normal per two engine outputs.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    double uniform();
    double gaussian();

private:
    std::mt19937_64 engine_;
};

enum class AttackKind { GaussianNoise, Quantize8Bit, Crop, Rescale };

struct CropRect {
    std::size_t top = 0;
    std::size_t left = 0;
    std::size_t height = 0;
    std::size_t width = 0;
};

struct AttackSpec {
    AttackKind kind = AttackKind::GaussianNoise;
    double sigma = 0.0;
    CropRect rect;
    double scale = 1.0;
    std::uint64_t seed = 0;

    static AttackSpec gaussian_noise(double sigma, std::uint64_t seed) {
        return {AttackKind::GaussianNoise, sigma, {}, 1.0, seed};
    }
    static AttackSpec quantize8() { return {AttackKind::Quantize8Bit, 0.0, {}, 1.0, 0}; }
    static AttackSpec crop(CropRect rect) { return {AttackKind::Crop, 0.0, rect, 1.0, 0}; }
    static AttackSpec rescale(double scale) { return {AttackKind::Rescale, 0.0, {}, scale, 0}; }
};

const char* attack_name(AttackKind kind) noexcept;
/// Comma-free parameter summary used in reports, e.g. "sigma=2.000000".
std::string attack_params(const AttackSpec& spec);

/// Nearest-neighbour resampling, used to bring a watermark to the cover's shape.
Matrix resize_nearest(const Matrix& a, std::size_t rows, std::size_t cols);

/// GaussianNoise adds N(0, sigma^2) per entry (row-major draw order);
/// Quantize8Bit rounds and clips to 0..255; Crop fills the rectangle with the
/// image mean; Rescale resamples bilinearly down by `scale` and back up.
Matrix apply_attack(const Matrix& a, const AttackSpec& spec);

struct RobustnessRow {
    double alpha = 0.0;
    AttackSpec attack;
    double psnr_marked = 0.0;
    double nc_extracted = 0.0;
};

struct RobustnessReport {
    std::vector<RobustnessRow> rows;
};

/// Semi-blind embed, attack, extract for every (alpha, attack) pair in input
/// order. psnr_marked compares the un-attacked marked image with the cover.
RobustnessReport robustness_sweep(const Matrix& cover, const Matrix& watermark, const std::vector<double>& alphas,
                                  const std::vector<AttackSpec>& attacks);

/// Header `alpha,attack,params,seed,psnr_db,nc`, reals with six decimals.
std::string to_csv(const RobustnessReport& report);

} // namespace svdmark
