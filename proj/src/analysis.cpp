#include "analysis.hpp"

#include "error.hpp"
#include "semi_blind.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>

namespace svdmark {

namespace {

std::string fixed6(double v) {
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

double mean(const Matrix& a) {
    const auto d = a.data();
    return std::accumulate(d.begin(), d.end(), 0.0) / static_cast<double>(d.size());
}

// Bilinear resample with pixel-centre alignment.
Matrix resample(const Matrix& src, std::size_t out_rows, std::size_t out_cols) {
    Matrix out(out_rows, out_cols);
    const double ry = static_cast<double>(src.rows()) / static_cast<double>(out_rows);
    const double rx = static_cast<double>(src.cols()) / static_cast<double>(out_cols);
    const double max_y = static_cast<double>(src.rows() - 1);
    const double max_x = static_cast<double>(src.cols() - 1);
    for (std::size_t r = 0; r < out_rows; ++r) {
        const double y = std::clamp((static_cast<double>(r) + 0.5) * ry - 0.5, 0.0, max_y);
        const auto y0 = static_cast<std::size_t>(y);
        const std::size_t y1 = std::min(y0 + 1, src.rows() - 1);
        const double fy = y - static_cast<double>(y0);
        for (std::size_t c = 0; c < out_cols; ++c) {
            const double x = std::clamp((static_cast<double>(c) + 0.5) * rx - 0.5, 0.0, max_x);
            const auto x0 = static_cast<std::size_t>(x);
            const std::size_t x1 = std::min(x0 + 1, src.cols() - 1);
            const double fx = x - static_cast<double>(x0);
            const double top = src(y0, x0) * (1.0 - fx) + src(y0, x1) * fx;
            const double bottom = src(y1, x0) * (1.0 - fx) + src(y1, x1) * fx;
            out(r, c) = top * (1.0 - fy) + bottom * fy;
        }
    }
    return out;
}

} // namespace

double psnr(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b, "psnr");
    const auto ad = a.data();
    const auto bd = b.data();
    double sse = 0.0;
    for (std::size_t i = 0; i < ad.size(); ++i) {
        const double d = ad[i] - bd[i];
        sse += d * d;
    }
    if (sse == 0.0)
        return psnr_identical;
    const double mse = sse / static_cast<double>(ad.size());
    return 10.0 * std::log10(255.0 * 255.0 / mse);
}

Correlation correlation(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b, "normalized_correlation");
    const double ma = mean(a);
    const double mb = mean(b);
    const auto ad = a.data();
    const auto bd = b.data();
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < ad.size(); ++i) {
        const double x = ad[i] - ma;
        const double y = bd[i] - mb;
        sab += x * y;
        saa += x * x;
        sbb += y * y;
    }
    if (saa == 0.0 || sbb == 0.0)
        return {0.0, true};
    return {std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0), false};
}

double normalized_correlation(const Matrix& a, const Matrix& b) {
    return correlation(a, b).value;
}

double Rng::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

const char* attack_name(AttackKind kind) noexcept {
    switch (kind) {
    case AttackKind::GaussianNoise: return "gaussian_noise";
    case AttackKind::Quantize8Bit: return "quantize8";
    case AttackKind::Crop: return "crop";
    case AttackKind::Rescale: return "rescale";
    }
    return "unknown";
}

std::string attack_params(const AttackSpec& spec) {
    switch (spec.kind) {
    case AttackKind::GaussianNoise: return "sigma=" + fixed6(spec.sigma);
    case AttackKind::Quantize8Bit: return "-";
    case AttackKind::Crop:
        return "rect=" + std::to_string(spec.rect.top) + ":" + std::to_string(spec.rect.left) + ":"
               + std::to_string(spec.rect.height) + ":" + std::to_string(spec.rect.width);
    case AttackKind::Rescale: return "scale=" + fixed6(spec.scale);
    }
    return "-";
}

Matrix resize_nearest(const Matrix& a, std::size_t rows, std::size_t cols) {
    Matrix out(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        const std::size_t sr = std::min(a.rows() - 1, r * a.rows() / rows);
        for (std::size_t c = 0; c < cols; ++c)
            out(r, c) = a(sr, std::min(a.cols() - 1, c * a.cols() / cols));
    }
    return out;
}

Matrix apply_attack(const Matrix& a, const AttackSpec& spec) {
    switch (spec.kind) {
    case AttackKind::GaussianNoise: {
        if (!std::isfinite(spec.sigma) || spec.sigma < 0.0)
            fail(ErrorCode::InvalidParameter, "noise sigma must be finite and non-negative");
        Matrix out = a;
        if (spec.sigma == 0.0)
            return out;
        Rng rng(spec.seed);
        for (double& v : out.data())
            v += spec.sigma * rng.gaussian();
        return out;
    }
    case AttackKind::Quantize8Bit: {
        Matrix out = a;
        for (double& v : out.data())
            v = std::clamp(std::round(v), 0.0, 255.0);
        return out;
    }
    case AttackKind::Crop: {
        const CropRect& r = spec.rect;
        if (r.height == 0 || r.width == 0 || r.top + r.height > a.rows() || r.left + r.width > a.cols())
            fail(ErrorCode::InvalidParameter, "crop rectangle is empty or outside the image");
        Matrix out = a;
        const double fill = mean(a);
        for (std::size_t y = r.top; y < r.top + r.height; ++y)
            for (std::size_t x = r.left; x < r.left + r.width; ++x)
                out(y, x) = fill;
        return out;
    }
    case AttackKind::Rescale: {
        if (!(spec.scale > 0.0 && spec.scale <= 1.0))
            fail(ErrorCode::InvalidParameter, "rescale factor must lie in (0, 1]");
        const auto down = [&](std::size_t n) {
            return std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(static_cast<double>(n) * spec.scale)));
        };
        return resample(resample(a, down(a.rows()), down(a.cols())), a.rows(), a.cols());
    }
    }
    fail(ErrorCode::InvalidParameter, "unknown attack kind");
}

RobustnessReport robustness_sweep(const Matrix& cover, const Matrix& watermark, const std::vector<double>& alphas,
                                  const std::vector<AttackSpec>& attacks) {
    if (alphas.empty() || attacks.empty())
        fail(ErrorCode::InvalidParameter, "robustness sweep needs at least one alpha and one attack");
    RobustnessReport report;
    report.rows.reserve(alphas.size() * attacks.size());
    for (double alpha : alphas) {
        const Marked marked = embed(cover, watermark, alpha);
        const double fidelity = psnr(marked.image, cover);
        for (const AttackSpec& attack : attacks) {
            const Matrix w_star = extract(apply_attack(marked.image, attack), marked.info);
            report.rows.push_back({alpha, attack, fidelity, normalized_correlation(w_star, watermark)});
        }
    }
    return report;
}

std::string to_csv(const RobustnessReport& report) {
    std::string out = "alpha,attack,params,seed,psnr_db,nc\n";
    for (const RobustnessRow& row : report.rows) {
        out += fixed6(row.alpha);
        out += ',';
        out += attack_name(row.attack.kind);
        out += ',';
        out += attack_params(row.attack);
        out += ',';
        out += std::to_string(row.attack.seed);
        out += ',';
        out += fixed6(row.psnr_marked);
        out += ',';
        out += fixed6(row.nc_extracted);
        out += '\n';
    }
    return out;
}

} // namespace svdmark
