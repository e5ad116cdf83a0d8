#include "color_adapt.hpp"

#include "error.hpp"
#include "invisible_mark.hpp"

#include <algorithm>

namespace svdmark {

namespace {

Marked embed_plane(const Matrix& plane, const Matrix& watermark, Scheme scheme, double alpha,
                   const std::optional<Identity>& id, AlphaPolicy policy) {
    if (scheme == Scheme::HashCode)
        return embed_invisible(plane, watermark, *id, alpha);
    return embed(plane, watermark, alpha, policy);
}

Matrix extract_plane(const Matrix& plane, const SideInfo& info, const std::optional<Identity>& id) {
    if (info.scheme == Scheme::HashCode) {
        if (!id)
            fail(ErrorCode::InvalidKey, "HashCode extraction needs an identity");
        return extract_invisible(plane, info, *id);
    }
    return extract(plane, info);
}

std::size_t expected_infos(ChannelStrategy strategy) {
    return strategy == ChannelStrategy::PerChannel ? 3 : 1;
}

} // namespace

RgbImage::RgbImage(Matrix r_, Matrix g_, Matrix b_) : r(std::move(r_)), g(std::move(g_)), b(std::move(b_)) {
    require_same_shape(r, g, "rgb image: red vs green");
    require_same_shape(r, b, "rgb image: red vs blue");
}

const char* strategy_name(ChannelStrategy strategy) noexcept {
    switch (strategy) {
    case ChannelStrategy::Luminance: return "luminance";
    case ChannelStrategy::BlueChannel: return "blue";
    case ChannelStrategy::PerChannel: return "perchannel";
    }
    return "unknown";
}

LuminancePlane luminance_split(const RgbImage& img) {
    Matrix l(img.rows(), img.cols());
    const auto r = img.r.data();
    const auto g = img.g.data();
    const auto b = img.b.data();
    auto out = l.data();
    for (std::size_t i = 0; i < out.size(); ++i) {
        const auto [lo, hi] = std::minmax({r[i], g[i], b[i]});
        out[i] = hi + lo;
    }
    return {std::move(l)};
}

RgbImage luminance_merge(const RgbImage& img, const LuminancePlane& l_new) {
    require_same_shape(img.r, l_new.l, "luminance_merge");
    const LuminancePlane current = luminance_split(img);
    RgbImage out = img;
    const auto target = l_new.l.data();
    const auto now = current.l.data();
    for (Matrix* plane : {&out.r, &out.g, &out.b}) {
        auto p = plane->data();
        for (std::size_t i = 0; i < p.size(); ++i) {
            const double delta = (target[i] - now[i]) / 2.0;
            if (delta != 0.0)
                p[i] = std::clamp(p[i] + delta, 0.0, 255.0);
        }
    }
    return out;
}

MarkedColor embed_color(const RgbImage& img, const Matrix& watermark, ChannelStrategy strategy, Scheme scheme,
                        double alpha, const std::optional<Identity>& id, AlphaPolicy policy) {
    if (scheme == Scheme::HashCode && !id)
        fail(ErrorCode::InvalidKey, "HashCode embedding needs an identity");
    if (scheme == Scheme::SemiBlind && id)
        fail(ErrorCode::InvalidParameter, "SemiBlind embedding takes no identity");
    require_same_shape(img.r, watermark, "embed_color: image vs watermark");

    SideInfoBundle bundle{strategy, {}};
    switch (strategy) {
    case ChannelStrategy::Luminance: {
        Marked m = embed_plane(luminance_split(img).l, watermark, scheme, alpha, id, policy);
        bundle.infos.push_back(std::move(m.info));
        return {luminance_merge(img, LuminancePlane{std::move(m.image)}), std::move(bundle)};
    }
    case ChannelStrategy::BlueChannel: {
        Marked m = embed_plane(img.b, watermark, scheme, alpha, id, policy);
        bundle.infos.push_back(std::move(m.info));
        return {RgbImage(img.r, img.g, std::move(m.image)), std::move(bundle)};
    }
    case ChannelStrategy::PerChannel: {
        Marked r = embed_plane(img.r, watermark, scheme, alpha, id, policy);
        Marked g = embed_plane(img.g, watermark, scheme, alpha, id, policy);
        Marked b = embed_plane(img.b, watermark, scheme, alpha, id, policy);
        bundle.infos = {std::move(r.info), std::move(g.info), std::move(b.info)};
        return {RgbImage(std::move(r.image), std::move(g.image), std::move(b.image)), std::move(bundle)};
    }
    }
    fail(ErrorCode::InvalidParameter, "unknown channel strategy");
}

Matrix extract_color(const RgbImage& img, const SideInfoBundle& bundle, ChannelStrategy strategy,
                     const std::optional<Identity>& id) {
    if (bundle.strategy != strategy || bundle.infos.size() != expected_infos(strategy))
        fail(ErrorCode::MalformedSideInfo, std::string("side info bundle does not match the ")
                                               + strategy_name(strategy) + " strategy");
    switch (strategy) {
    case ChannelStrategy::Luminance: return extract_plane(luminance_split(img).l, bundle.infos[0], id);
    case ChannelStrategy::BlueChannel: return extract_plane(img.b, bundle.infos[0], id);
    case ChannelStrategy::PerChannel: {
        const Matrix sum = extract_plane(img.r, bundle.infos[0], id) + extract_plane(img.g, bundle.infos[1], id)
                           + extract_plane(img.b, bundle.infos[2], id);
        return (1.0 / 3.0) * sum;
    }
    }
    fail(ErrorCode::InvalidParameter, "unknown channel strategy");
}

} // namespace svdmark
