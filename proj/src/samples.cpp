#include "samples.hpp"

#include "analysis.hpp"
#include "error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

namespace svdmark {

namespace {

double smoothstep(double t) {
    return t * t * (3.0 - 2.0 * t);
}

// Lattice noise on a (cells+1)^2 grid, smoothly interpolated to rows x cols.
void add_value_noise(Matrix& out, Rng& rng, std::size_t cells, double amplitude) {
    const std::size_t n = cells + 1;
    std::vector<double> lattice(n * n);
    for (double& v : lattice)
        v = 2.0 * rng.uniform() - 1.0;
    for (std::size_t r = 0; r < out.rows(); ++r) {
        const double y = static_cast<double>(r) * static_cast<double>(cells) / static_cast<double>(out.rows());
        const auto y0 = static_cast<std::size_t>(y);
        const double fy = smoothstep(y - static_cast<double>(y0));
        for (std::size_t c = 0; c < out.cols(); ++c) {
            const double x = static_cast<double>(c) * static_cast<double>(cells) / static_cast<double>(out.cols());
            const auto x0 = static_cast<std::size_t>(x);
            const double fx = smoothstep(x - static_cast<double>(x0));
            const double a = lattice[y0 * n + x0] * (1.0 - fx) + lattice[y0 * n + x0 + 1] * fx;
            const double b = lattice[(y0 + 1) * n + x0] * (1.0 - fx) + lattice[(y0 + 1) * n + x0 + 1] * fx;
            out(r, c) += amplitude * (a * (1.0 - fy) + b * fy);
        }
    }
}

void clamp_pixels(Matrix& m, double lo, double hi) {
    for (double& v : m.data())
        v = std::clamp(v, lo, hi);
}

Matrix portrait(std::size_t rows, std::size_t cols, Rng& rng) {
    Matrix m(rows, cols);
    const double gx = 30.0 * (rng.uniform() - 0.5);
    const double gy = 30.0 * (rng.uniform() - 0.5);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            m(r, c) = 120.0 + gy * (static_cast<double>(r) / static_cast<double>(rows) - 0.5) * 2.0
                      + gx * (static_cast<double>(c) / static_cast<double>(cols) - 0.5) * 2.0;
    const int blobs = 12;
    for (int k = 0; k < blobs; ++k) {
        const double cy = rng.uniform() * static_cast<double>(rows);
        const double cx = rng.uniform() * static_cast<double>(cols);
        const double radius = (0.06 + 0.2 * rng.uniform()) * static_cast<double>(std::min(rows, cols));
        const double amp = 160.0 * (rng.uniform() - 0.5);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c) {
                const double dy = static_cast<double>(r) - cy;
                const double dx = static_cast<double>(c) - cx;
                m(r, c) += amp * std::exp(-(dx * dx + dy * dy) / (2.0 * radius * radius));
            }
    }
    // A hard-edged oval "face" and a diagonal band give the image real edges.
    const double fy = (0.4 + 0.2 * rng.uniform()) * static_cast<double>(rows);
    const double fx = (0.4 + 0.2 * rng.uniform()) * static_cast<double>(cols);
    const double ry = 0.28 * static_cast<double>(rows);
    const double rx = 0.2 * static_cast<double>(cols);
    const double face = 50.0 + 30.0 * rng.uniform();
    const double band = 0.3 + 0.4 * rng.uniform();
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
            const double y = static_cast<double>(r);
            const double x = static_cast<double>(c);
            const double e = (y - fy) * (y - fy) / (ry * ry) + (x - fx) * (x - fx) / (rx * rx);
            if (e <= 1.0)
                m(r, c) += face * (1.0 - 0.5 * e);
            const double d = (x / static_cast<double>(cols) + y / static_cast<double>(rows)) * 0.5 - band;
            if (std::abs(d) < 0.06)
                m(r, c) -= 70.0 + 25.0 * std::sin(40.0 * d);
        }
    add_value_noise(m, rng, 32, 6.0);
    clamp_pixels(m, 10.0, 245.0);
    return m;
}

Matrix texture(std::size_t rows, std::size_t cols, Rng& rng) {
    Matrix m(rows, cols);
    double amplitude = 1.0;
    for (std::size_t cells = 4; cells <= 64; cells *= 2) {
        add_value_noise(m, rng, std::min({cells, rows, cols}), amplitude);
        amplitude *= 0.75;
    }
    const auto d = m.data();
    const double mean = std::accumulate(d.begin(), d.end(), 0.0) / static_cast<double>(d.size());
    double var = 0.0;
    for (double v : d)
        var += (v - mean) * (v - mean);
    const double sd = std::sqrt(var / static_cast<double>(d.size()));
    for (double& v : m.data())
        v = 128.0 + 64.0 * (v - mean) / (sd > 0.0 ? sd : 1.0);
    clamp_pixels(m, 0.0, 255.0);
    return m;
}

Matrix plane(std::size_t rows, std::size_t cols, Rng& rng) {
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            m(r, c) = 235.0 - 60.0 * static_cast<double>(r) / static_cast<double>(rows);
    add_value_noise(m, rng, 8, 10.0);

    const double size = static_cast<double>(std::min(rows, cols));
    const double cy = (0.35 + 0.3 * rng.uniform()) * static_cast<double>(rows);
    const double cx = (0.35 + 0.3 * rng.uniform()) * static_cast<double>(cols);
    const double heading = (rng.uniform() - 0.5) * std::numbers::pi / 2.0;
    const double length = (0.30 + 0.15 * rng.uniform()) * size;
    const double span = (0.45 + 0.2 * rng.uniform()) * size;
    const double shade = 40.0 + 40.0 * rng.uniform();
    const double ch = std::cos(heading);
    const double sh = std::sin(heading);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
            const double dy = static_cast<double>(r) - cy;
            const double dx = static_cast<double>(c) - cx;
            const double along = dx * ch + dy * sh;
            const double across = -dx * sh + dy * ch;
            const double fuselage = (along * along) / (0.25 * length * length)
                                    + (across * across) / (0.0036 * length * length);
            const bool wing = std::abs(across) < 0.5 * span * (1.0 - std::abs(along) / (0.12 * length))
                              && std::abs(along) < 0.12 * length;
            const bool tail = along < -0.38 * length && along > -0.5 * length
                              && std::abs(across) < 0.12 * span * ((along + 0.5 * length) / (0.12 * length));
            if (fuselage <= 1.0 || wing || tail)
                m(r, c) = shade + 0.1 * along;
        }
    clamp_pixels(m, 0.0, 255.0);
    return m;
}

} // namespace

std::optional<SampleKind> sample_kind_from_name(std::string_view name) {
    for (auto k : {SampleKind::Portrait, SampleKind::Texture, SampleKind::Plane})
        if (name == sample_kind_name(k))
            return k;
    return std::nullopt;
}

const char* sample_kind_name(SampleKind kind) noexcept {
    switch (kind) {
    case SampleKind::Portrait: return "portrait";
    case SampleKind::Texture: return "texture";
    case SampleKind::Plane: return "plane";
    }
    return "unknown";
}

Matrix sample_image(SampleKind kind, std::size_t rows, std::size_t cols, std::uint64_t seed) {
    if (rows == 0 || cols == 0)
        fail(ErrorCode::DimensionError, "sample image extents must be positive");
    Rng rng(seed);
    switch (kind) {
    case SampleKind::Portrait: return portrait(rows, cols, rng);
    case SampleKind::Texture: return texture(rows, cols, rng);
    case SampleKind::Plane: return plane(rows, cols, rng);
    }
    fail(ErrorCode::InvalidParameter, "unknown sample kind");
}

RgbImage sample_rgb(std::size_t rows, std::size_t cols, std::uint64_t seed, double lo, double hi) {
    if (!(lo >= 0.0 && hi <= 255.0 && lo < hi))
        fail(ErrorCode::InvalidParameter, "sample colour range must satisfy 0 <= lo < hi <= 255");
    Rng rng(seed);
    const Matrix base = portrait(rows, cols, rng);
    Matrix r = base, g = base, b = base;
    add_value_noise(r, rng, 8, 25.0);
    add_value_noise(g, rng, 8, 25.0);
    add_value_noise(b, rng, 8, 25.0);
    for (Matrix* p : {&r, &g, &b}) {
        clamp_pixels(*p, 0.0, 255.0);
        for (double& v : p->data())
            v = lo + (hi - lo) * v / 255.0;
    }
    return RgbImage(std::move(r), std::move(g), std::move(b));
}

} // namespace svdmark
