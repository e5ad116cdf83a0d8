#include "svdmark/svdmark.h"

#include "analysis.hpp"
#include "codecs.hpp"
#include "color_adapt.hpp"
#include "error.hpp"
#include "invisible_mark.hpp"
#include "matrix.hpp"
#include "samples.hpp"
#include "semi_blind.hpp"

#include <cstring>
#include <new>
#include <optional>
#include <string>

struct svdmark_matrix {
    svdmark::Matrix value;
};
struct svdmark_sideinfo {
    svdmark::SideInfo value;
};
struct svdmark_rgb {
    svdmark::RgbImage value;
};
struct svdmark_bundle {
    svdmark::SideInfoBundle value;
};
struct svdmark_report {
    svdmark::RobustnessReport value;
    std::string csv;
};

namespace {

using namespace svdmark;

thread_local std::string last_error;

struct NullArgument {};

template <class T>
const T& deref(const T* p) {
    if (!p)
        throw NullArgument{};
    return *p;
}

template <class T>
void require_out(T** out) {
    if (!out)
        throw NullArgument{};
}

// Runs f and converts exceptions into status codes. Out-parameters are only
// assigned inside f after everything that can throw has completed.
template <class F>
svdmark_status guarded(F&& f) noexcept {
    try {
        f();
        last_error.clear();
        return SVDMARK_OK;
    } catch (const Error& e) {
        last_error = std::string(error_code_name(e.code())) + ": " + e.what();
        return static_cast<svdmark_status>(e.code());
    } catch (const NullArgument&) {
        last_error = "NullArgument: required pointer argument is NULL";
        return SVDMARK_E_NULL_ARGUMENT;
    } catch (const std::bad_alloc&) {
        last_error = "OutOfMemory";
        return SVDMARK_E_OUT_OF_MEMORY;
    } catch (const std::exception& e) {
        last_error = std::string("Internal: ") + e.what();
        return SVDMARK_E_INTERNAL;
    } catch (...) {
        last_error = "Internal: unknown exception";
        return SVDMARK_E_INTERNAL;
    }
}

svdmark_matrix* wrap(Matrix m) {
    return new svdmark_matrix{std::move(m)};
}

std::optional<Identity> optional_id(const std::uint8_t* id, std::size_t len) {
    if (len == 0)
        return std::nullopt;
    if (!id)
        throw NullArgument{};
    return Identity(std::vector<std::uint8_t>(id, id + len));
}

Identity required_id(const std::uint8_t* id, std::size_t len) {
    if (len == 0)
        fail(ErrorCode::InvalidKey, "identity must not be empty");
    return *optional_id(id, len);
}

ChannelStrategy to_strategy(svdmark_strategy s) {
    switch (s) {
    case SVDMARK_LUMINANCE: return ChannelStrategy::Luminance;
    case SVDMARK_BLUE_CHANNEL: return ChannelStrategy::BlueChannel;
    case SVDMARK_PER_CHANNEL: return ChannelStrategy::PerChannel;
    }
    fail(ErrorCode::InvalidParameter, "unknown strategy value");
}

Scheme to_scheme(svdmark_scheme s) {
    switch (s) {
    case SVDMARK_SEMI_BLIND: return Scheme::SemiBlind;
    case SVDMARK_HASH_CODE: return Scheme::HashCode;
    }
    fail(ErrorCode::InvalidParameter, "unknown scheme value");
}

AttackSpec to_attack(const svdmark_attack& a) {
    switch (a.kind) {
    case SVDMARK_ATTACK_GAUSSIAN_NOISE: return AttackSpec::gaussian_noise(a.sigma, a.seed);
    case SVDMARK_ATTACK_QUANTIZE8: return AttackSpec::quantize8();
    case SVDMARK_ATTACK_CROP: return AttackSpec::crop({a.rect[0], a.rect[1], a.rect[2], a.rect[3]});
    case SVDMARK_ATTACK_RESCALE: return AttackSpec::rescale(a.scale);
    }
    fail(ErrorCode::InvalidParameter, "unknown attack kind");
}

const char* path_of(const char* p) {
    if (!p)
        throw NullArgument{};
    return p;
}

} // namespace

extern "C" {

const char* svdmark_version(void) {
    return "1.0.0";
}

const char* svdmark_last_error(void) {
    return last_error.c_str();
}

const char* svdmark_status_name(svdmark_status status) {
    switch (status) {
    case SVDMARK_E_NULL_ARGUMENT: return "NullArgument";
    case SVDMARK_E_OUT_OF_MEMORY: return "OutOfMemory";
    case SVDMARK_E_INTERNAL: return "Internal";
    default:
        if (status >= SVDMARK_OK && status <= SVDMARK_E_IO)
            return error_code_name(static_cast<ErrorCode>(status));
        return "Unknown";
    }
}

svdmark_status svdmark_matrix_create(size_t rows, size_t cols, const double* data, svdmark_matrix** out) {
    return guarded([&] {
        require_out(out);
        Matrix m = data ? Matrix(rows, cols, std::vector<double>(data, data + rows * cols)) : Matrix(rows, cols);
        *out = wrap(std::move(m));
    });
}

void svdmark_matrix_free(svdmark_matrix* m) {
    delete m;
}

size_t svdmark_matrix_rows(const svdmark_matrix* m) {
    return m ? m->value.rows() : 0;
}

size_t svdmark_matrix_cols(const svdmark_matrix* m) {
    return m ? m->value.cols() : 0;
}

const double* svdmark_matrix_data(const svdmark_matrix* m) {
    return m ? m->value.data().data() : nullptr;
}

svdmark_status svdmark_svd(const svdmark_matrix* a, svdmark_matrix** u, svdmark_matrix** s, svdmark_matrix** v) {
    return guarded([&] {
        require_out(u);
        require_out(s);
        require_out(v);
        SvdFactors f = svd(deref(a).value);
        auto pu = std::make_unique<svdmark_matrix>(svdmark_matrix{std::move(f.u)});
        auto ps = std::make_unique<svdmark_matrix>(svdmark_matrix{std::move(f.s)});
        auto pv = std::make_unique<svdmark_matrix>(svdmark_matrix{std::move(f.v)});
        *u = pu.release();
        *s = ps.release();
        *v = pv.release();
    });
}

svdmark_status svdmark_reconstruct(const svdmark_matrix* u, const svdmark_matrix* s, const svdmark_matrix* v,
                                   svdmark_matrix** out) {
    return guarded([&] {
        require_out(out);
        *out = wrap(reconstruct(deref(u).value, deref(s).value, deref(v).value));
    });
}

svdmark_status svdmark_orthogonality_residual(const svdmark_matrix* m, double* out) {
    return guarded([&] {
        if (!out)
            throw NullArgument{};
        *out = orthogonality_residual(deref(m).value);
    });
}

svdmark_status svdmark_resize_nearest(const svdmark_matrix* m, size_t rows, size_t cols, svdmark_matrix** out) {
    return guarded([&] {
        require_out(out);
        *out = wrap(resize_nearest(deref(m).value, rows, cols));
    });
}

svdmark_status svdmark_embed(const svdmark_matrix* cover, const svdmark_matrix* watermark, double alpha,
                             svdmark_matrix** marked, svdmark_sideinfo** info) {
    return guarded([&] {
        require_out(marked);
        require_out(info);
        Marked m = embed(deref(cover).value, deref(watermark).value, alpha);
        auto pm = std::make_unique<svdmark_matrix>(svdmark_matrix{std::move(m.image)});
        auto pi = std::make_unique<svdmark_sideinfo>(svdmark_sideinfo{std::move(m.info)});
        *marked = pm.release();
        *info = pi.release();
    });
}

svdmark_status svdmark_extract(const svdmark_matrix* marked, const svdmark_sideinfo* info, svdmark_matrix** w_star) {
    return guarded([&] {
        require_out(w_star);
        *w_star = wrap(extract(deref(marked).value, deref(info).value));
    });
}

svdmark_status svdmark_extract_components(const svdmark_matrix* marked, const svdmark_sideinfo* info,
                                          svdmark_matrix** a_wa_star) {
    return guarded([&] {
        require_out(a_wa_star);
        *a_wa_star = wrap(extract_components(deref(marked).value, deref(info).value).matrix);
    });
}

svdmark_status svdmark_detect_reference(const svdmark_matrix* a_wa_star, const svdmark_matrix* v_ref,
                                        svdmark_matrix** p_star) {
    return guarded([&] {
        require_out(p_star);
        *p_star = wrap(detect_reference(PrincipalComponents{deref(a_wa_star).value}, deref(v_ref).value));
    });
}

svdmark_status svdmark_derive_mask(const uint8_t* id, size_t id_len, size_t rows, size_t cols, uint8_t* out) {
    return guarded([&] {
        if (!out)
            throw NullArgument{};
        const MaskMatrix mask = derive_mask(required_id(id, id_len), rows, cols);
        std::memcpy(out, mask.data.data(), mask.data.size());
    });
}

svdmark_status svdmark_embed_hash(const svdmark_matrix* cover, const svdmark_matrix* watermark, const uint8_t* id,
                                  size_t id_len, double alpha, svdmark_matrix** marked, svdmark_sideinfo** info) {
    return guarded([&] {
        require_out(marked);
        require_out(info);
        Marked m = embed_invisible(deref(cover).value, deref(watermark).value, required_id(id, id_len), alpha);
        auto pm = std::make_unique<svdmark_matrix>(svdmark_matrix{std::move(m.image)});
        auto pi = std::make_unique<svdmark_sideinfo>(svdmark_sideinfo{std::move(m.info)});
        *marked = pm.release();
        *info = pi.release();
    });
}

svdmark_status svdmark_extract_hash(const svdmark_matrix* marked, const svdmark_sideinfo* info, const uint8_t* id,
                                    size_t id_len, svdmark_matrix** w_star) {
    return guarded([&] {
        require_out(w_star);
        *w_star = wrap(extract_invisible(deref(marked).value, deref(info).value, required_id(id, id_len)));
    });
}

svdmark_status svdmark_verify_hash(const svdmark_matrix* marked, const svdmark_sideinfo* info, const uint8_t* id,
                                   size_t id_len, const svdmark_matrix* claimed, double threshold, double* nc,
                                   int* verified) {
    return guarded([&] {
        if (!nc || !verified)
            throw NullArgument{};
        const VerificationReport r = verify_invisible(deref(marked).value, deref(info).value,
                                                      required_id(id, id_len), deref(claimed).value, threshold);
        *nc = r.nc_score;
        *verified = r.decision == Decision::Verified ? 1 : 0;
    });
}

void svdmark_sideinfo_free(svdmark_sideinfo* info) {
    delete info;
}

svdmark_scheme svdmark_sideinfo_scheme(const svdmark_sideinfo* info) {
    return info && info->value.scheme == Scheme::HashCode ? SVDMARK_HASH_CODE : SVDMARK_SEMI_BLIND;
}

double svdmark_sideinfo_alpha(const svdmark_sideinfo* info) {
    return info ? info->value.alpha : 0.0;
}

svdmark_status svdmark_sideinfo_save(const svdmark_sideinfo* info, const char* path) {
    return guarded([&] { save_sideinfo(deref(info).value, path_of(path)); });
}

svdmark_status svdmark_sideinfo_load(const char* path, svdmark_sideinfo** out) {
    return guarded([&] {
        require_out(out);
        SideInfo info = load_sideinfo(path_of(path));
        *out = new svdmark_sideinfo{std::move(info)};
    });
}

svdmark_status svdmark_keyfile_is_bundle(const char* path, int* is_bundle_out) {
    return guarded([&] {
        if (!is_bundle_out)
            throw NullArgument{};
        const auto bytes = read_file(path_of(path));
        *is_bundle_out = is_bundle(std::string(bytes.begin(), bytes.end())) ? 1 : 0;
    });
}

svdmark_status svdmark_rgb_create(const svdmark_matrix* r, const svdmark_matrix* g, const svdmark_matrix* b,
                                  svdmark_rgb** out) {
    return guarded([&] {
        require_out(out);
        RgbImage img(deref(r).value, deref(g).value, deref(b).value);
        *out = new svdmark_rgb{std::move(img)};
    });
}

void svdmark_rgb_free(svdmark_rgb* img) {
    delete img;
}

svdmark_status svdmark_rgb_channel(const svdmark_rgb* img, int channel, svdmark_matrix** out) {
    return guarded([&] {
        require_out(out);
        const RgbImage& v = deref(img).value;
        switch (channel) {
        case 0: *out = wrap(v.r); break;
        case 1: *out = wrap(v.g); break;
        case 2: *out = wrap(v.b); break;
        default: fail(ErrorCode::InvalidParameter, "channel index must be 0, 1 or 2");
        }
    });
}

svdmark_status svdmark_luminance(const svdmark_rgb* img, svdmark_matrix** out) {
    return guarded([&] {
        require_out(out);
        *out = wrap(luminance_split(deref(img).value).l);
    });
}

svdmark_status svdmark_embed_color(const svdmark_rgb* img, const svdmark_matrix* watermark, svdmark_strategy strategy,
                                   svdmark_scheme scheme, double alpha, const uint8_t* id, size_t id_len,
                                   svdmark_rgb** marked, svdmark_bundle** bundle) {
    return guarded([&] {
        require_out(marked);
        require_out(bundle);
        MarkedColor m = embed_color(deref(img).value, deref(watermark).value, to_strategy(strategy),
                                    to_scheme(scheme), alpha, optional_id(id, id_len));
        auto pm = std::make_unique<svdmark_rgb>(svdmark_rgb{std::move(m.image)});
        auto pb = std::make_unique<svdmark_bundle>(svdmark_bundle{std::move(m.bundle)});
        *marked = pm.release();
        *bundle = pb.release();
    });
}

svdmark_status svdmark_extract_color(const svdmark_rgb* img, const svdmark_bundle* bundle, svdmark_strategy strategy,
                                     const uint8_t* id, size_t id_len, svdmark_matrix** w_star) {
    return guarded([&] {
        require_out(w_star);
        *w_star = wrap(extract_color(deref(img).value, deref(bundle).value, to_strategy(strategy),
                                     optional_id(id, id_len)));
    });
}

void svdmark_bundle_free(svdmark_bundle* bundle) {
    delete bundle;
}

svdmark_strategy svdmark_bundle_strategy(const svdmark_bundle* bundle) {
    if (!bundle)
        return SVDMARK_LUMINANCE;
    switch (bundle->value.strategy) {
    case ChannelStrategy::BlueChannel: return SVDMARK_BLUE_CHANNEL;
    case ChannelStrategy::PerChannel: return SVDMARK_PER_CHANNEL;
    default: return SVDMARK_LUMINANCE;
    }
}

svdmark_status svdmark_bundle_save(const svdmark_bundle* bundle, const char* path) {
    return guarded([&] { save_bundle(deref(bundle).value, path_of(path)); });
}

svdmark_status svdmark_bundle_load(const char* path, svdmark_bundle** out) {
    return guarded([&] {
        require_out(out);
        SideInfoBundle b = load_bundle(path_of(path));
        *out = new svdmark_bundle{std::move(b)};
    });
}

svdmark_status svdmark_psnr(const svdmark_matrix* a, const svdmark_matrix* b, double* out) {
    return guarded([&] {
        if (!out)
            throw NullArgument{};
        *out = psnr(deref(a).value, deref(b).value);
    });
}

svdmark_status svdmark_normalized_correlation(const svdmark_matrix* a, const svdmark_matrix* b, double* out) {
    return guarded([&] {
        if (!out)
            throw NullArgument{};
        *out = normalized_correlation(deref(a).value, deref(b).value);
    });
}

svdmark_status svdmark_apply_attack(const svdmark_matrix* a, const svdmark_attack* attack, svdmark_matrix** out) {
    return guarded([&] {
        require_out(out);
        *out = wrap(apply_attack(deref(a).value, to_attack(deref(attack))));
    });
}

svdmark_status svdmark_sweep(const svdmark_matrix* cover, const svdmark_matrix* watermark, const double* alphas,
                             size_t n_alphas, const svdmark_attack* attacks, size_t n_attacks, svdmark_report** out) {
    return guarded([&] {
        require_out(out);
        if ((n_alphas && !alphas) || (n_attacks && !attacks))
            throw NullArgument{};
        std::vector<double> a(alphas, alphas + n_alphas);
        std::vector<AttackSpec> specs;
        for (std::size_t i = 0; i < n_attacks; ++i)
            specs.push_back(to_attack(attacks[i]));
        RobustnessReport report = robustness_sweep(deref(cover).value, deref(watermark).value, a, specs);
        std::string csv = to_csv(report);
        *out = new svdmark_report{std::move(report), std::move(csv)};
    });
}

void svdmark_report_free(svdmark_report* report) {
    delete report;
}

size_t svdmark_report_rows(const svdmark_report* report) {
    return report ? report->value.rows.size() : 0;
}

svdmark_status svdmark_report_row(const svdmark_report* report, size_t index, double* alpha, double* psnr_db,
                                  double* nc) {
    return guarded([&] {
        const RobustnessReport& r = deref(report).value;
        if (index >= r.rows.size())
            fail(ErrorCode::InvalidParameter, "report row index out of range");
        const RobustnessRow& row = r.rows[index];
        if (alpha)
            *alpha = row.alpha;
        if (psnr_db)
            *psnr_db = row.psnr_marked;
        if (nc)
            *nc = row.nc_extracted;
    });
}

svdmark_status svdmark_report_csv(const svdmark_report* report, char* buf, size_t capacity, size_t* needed) {
    return guarded([&] {
        const std::string& csv = deref(report).csv;
        if (needed)
            *needed = csv.size() + 1;
        if (!buf)
            return;
        if (capacity < csv.size() + 1)
            fail(ErrorCode::InvalidParameter, "CSV buffer too small");
        std::memcpy(buf, csv.c_str(), csv.size() + 1);
    });
}

svdmark_status svdmark_read_image(const char* path, svdmark_matrix** out) {
    return guarded([&] {
        require_out(out);
        *out = wrap(read_mono(path_of(path)));
    });
}

svdmark_status svdmark_write_image(const svdmark_matrix* m, const char* path) {
    return guarded([&] { write_mono(deref(m).value, path_of(path)); });
}

svdmark_status svdmark_read_ppm(const char* path, svdmark_rgb** out) {
    return guarded([&] {
        require_out(out);
        RgbImage img = read_ppm(path_of(path));
        *out = new svdmark_rgb{std::move(img)};
    });
}

svdmark_status svdmark_write_ppm(const svdmark_rgb* img, const char* path) {
    return guarded([&] { write_ppm(deref(img).value, path_of(path)); });
}

svdmark_status svdmark_sample_image(svdmark_sample_kind kind, size_t rows, size_t cols, uint64_t seed,
                                    svdmark_matrix** out) {
    return guarded([&] {
        require_out(out);
        SampleKind k;
        switch (kind) {
        case SVDMARK_SAMPLE_PORTRAIT: k = SampleKind::Portrait; break;
        case SVDMARK_SAMPLE_TEXTURE: k = SampleKind::Texture; break;
        case SVDMARK_SAMPLE_PLANE: k = SampleKind::Plane; break;
        default: fail(ErrorCode::InvalidParameter, "unknown sample kind");
        }
        *out = wrap(sample_image(k, rows, cols, seed));
    });
}

svdmark_status svdmark_sample_rgb(size_t rows, size_t cols, uint64_t seed, double lo, double hi, svdmark_rgb** out) {
    return guarded([&] {
        require_out(out);
        RgbImage img = sample_rgb(rows, cols, seed, lo, hi);
        *out = new svdmark_rgb{std::move(img)};
    });
}

} // extern "C"
