// svdmark command line: embed, extract, verify and analyse SVD watermarks.
//
// Exit codes: 0 success, 1 usage or I/O error, 2 verification rejected.

#include "handles.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace svdmark_cli;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_error = 1;
constexpr int exit_rejected = 2;

struct Globals {
    double alpha = 0.1;
    std::string strategy = "luminance";
    std::uint64_t seed = 42;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

bool has_extension(const std::string& path, const char* ext) {
    std::string e = std::filesystem::path(path).extension().string();
    for (char& c : e)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return e == ext;
}

svdmark_strategy parse_strategy(const std::string& s) {
    if (s == "luminance")
        return SVDMARK_LUMINANCE;
    if (s == "blue")
        return SVDMARK_BLUE_CHANNEL;
    if (s == "perchannel")
        return SVDMARK_PER_CHANNEL;
    throw UsageError("unknown strategy '" + s + "' (luminance, blue, perchannel)");
}

MatrixPtr read_mono(const std::string& path) {
    svdmark_matrix* m = nullptr;
    check(svdmark_read_image(path.c_str(), &m));
    return MatrixPtr(m);
}

RgbPtr read_rgb(const std::string& path) {
    svdmark_rgb* img = nullptr;
    check(svdmark_read_ppm(path.c_str(), &img));
    return RgbPtr(img);
}

void write_mono(const svdmark_matrix* m, const std::string& path) {
    check(svdmark_write_image(m, path.c_str()));
}

SideInfoPtr load_key(const std::string& path) {
    svdmark_sideinfo* info = nullptr;
    check(svdmark_sideinfo_load(path.c_str(), &info));
    return SideInfoPtr(info);
}

bool key_is_bundle(const std::string& path) {
    int flag = 0;
    check(svdmark_keyfile_is_bundle(path.c_str(), &flag));
    return flag != 0;
}

double nc(const svdmark_matrix* a, const svdmark_matrix* b) {
    double v = 0.0;
    check(svdmark_normalized_correlation(a, b, &v));
    return v;
}

// Brings the watermark to the cover's shape when --resize is given.
MatrixPtr fit_watermark(MatrixPtr w, std::size_t rows, std::size_t cols, bool resize) {
    if (svdmark_matrix_rows(w.get()) == rows && svdmark_matrix_cols(w.get()) == cols)
        return w;
    if (!resize)
        return w; // the library reports the dimension mismatch
    svdmark_matrix* out = nullptr;
    check(svdmark_resize_nearest(w.get(), rows, cols, &out));
    return MatrixPtr(out);
}

const std::uint8_t* id_bytes(const std::string& id) {
    return reinterpret_cast<const std::uint8_t*>(id.data());
}

svdmark_attack parse_attack(const std::string& text, std::uint64_t seed) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ':');)
        parts.push_back(p);
    svdmark_attack a{};
    a.seed = seed;
    a.scale = 1.0;
    try {
        if (parts.size() == 2 && parts[0] == "noise") {
            a.kind = SVDMARK_ATTACK_GAUSSIAN_NOISE;
            a.sigma = std::stod(parts[1]);
            return a;
        }
        if (parts.size() == 1 && parts[0] == "quant8") {
            a.kind = SVDMARK_ATTACK_QUANTIZE8;
            return a;
        }
        if (parts.size() == 5 && parts[0] == "crop") {
            a.kind = SVDMARK_ATTACK_CROP;
            for (int i = 0; i < 4; ++i)
                a.rect[i] = std::stoul(parts[static_cast<std::size_t>(i) + 1]);
            return a;
        }
        if (parts.size() == 2 && parts[0] == "rescale") {
            a.kind = SVDMARK_ATTACK_RESCALE;
            a.scale = std::stod(parts[1]);
            return a;
        }
    } catch (const std::logic_error&) {
    }
    throw UsageError("bad attack '" + text + "' (noise:SIGMA, quant8, crop:TOP:LEFT:H:W, rescale:SCALE)");
}

std::vector<double> parse_alphas(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ',');) {
        try {
            out.push_back(std::stod(p));
        } catch (const std::logic_error&) {
            throw UsageError("bad alpha list '" + text + "'");
        }
    }
    return out;
}

int run_embed(const Globals& g, const std::string& cover_path, const std::string& wm_path, const std::string& out,
              const std::string& key, bool resize, const std::optional<std::string>& id) {
    const svdmark_scheme scheme = id ? SVDMARK_HASH_CODE : SVDMARK_SEMI_BLIND;
    const std::uint8_t* idp = id ? id_bytes(*id) : nullptr;
    const std::size_t idn = id ? id->size() : 0;
    if (has_extension(cover_path, ".ppm")) {
        RgbPtr cover = read_rgb(cover_path);
        svdmark_matrix* r = nullptr;
        check(svdmark_rgb_channel(cover.get(), 0, &r));
        MatrixPtr red(r);
        MatrixPtr wm = fit_watermark(read_mono(wm_path), svdmark_matrix_rows(red.get()),
                                     svdmark_matrix_cols(red.get()), resize);
        svdmark_rgb* marked = nullptr;
        svdmark_bundle* bundle = nullptr;
        check(svdmark_embed_color(cover.get(), wm.get(), parse_strategy(g.strategy), scheme, g.alpha, idp, idn,
                                  &marked, &bundle));
        RgbPtr marked_ptr(marked);
        BundlePtr bundle_ptr(bundle);
        check(svdmark_write_ppm(marked, out.c_str()));
        check(svdmark_bundle_save(bundle, key.c_str()));
        return exit_ok;
    }
    MatrixPtr cover = read_mono(cover_path);
    MatrixPtr wm = fit_watermark(read_mono(wm_path), svdmark_matrix_rows(cover.get()),
                                 svdmark_matrix_cols(cover.get()), resize);
    svdmark_matrix* marked = nullptr;
    svdmark_sideinfo* info = nullptr;
    if (id)
        check(svdmark_embed_hash(cover.get(), wm.get(), idp, idn, g.alpha, &marked, &info));
    else
        check(svdmark_embed(cover.get(), wm.get(), g.alpha, &marked, &info));
    MatrixPtr marked_ptr(marked);
    SideInfoPtr info_ptr(info);
    write_mono(marked, out);
    check(svdmark_sideinfo_save(info, key.c_str()));
    double fidelity = 0.0;
    check(svdmark_psnr(cover.get(), marked, &fidelity));
    std::cout << "psnr_db=" << fidelity << "\n";
    return exit_ok;
}

MatrixPtr extract_any(const Globals& g, bool strategy_given, const std::string& marked_path, const std::string& key,
                      const std::optional<std::string>& id) {
    const std::uint8_t* idp = id ? id_bytes(*id) : nullptr;
    const std::size_t idn = id ? id->size() : 0;
    if (key_is_bundle(key)) {
        svdmark_bundle* b = nullptr;
        check(svdmark_bundle_load(key.c_str(), &b));
        BundlePtr bundle(b);
        const svdmark_strategy strategy = strategy_given ? parse_strategy(g.strategy)
                                                         : svdmark_bundle_strategy(bundle.get());
        RgbPtr img = read_rgb(marked_path);
        svdmark_matrix* w = nullptr;
        check(svdmark_extract_color(img.get(), bundle.get(), strategy, idp, idn, &w));
        return MatrixPtr(w);
    }
    SideInfoPtr info = load_key(key);
    MatrixPtr marked = read_mono(marked_path);
    svdmark_matrix* w = nullptr;
    if (id)
        check(svdmark_extract_hash(marked.get(), info.get(), idp, idn, &w));
    else
        check(svdmark_extract(marked.get(), info.get(), &w));
    return MatrixPtr(w);
}

int run(int argc, char** argv) {
    CLI::App app{"SVD watermarking: semi-blind and hash-keyed invisible schemes"};
    app.name("svdmark");
    app.fallthrough();
    Globals g;
    app.add_option("--alpha", g.alpha, "Scaling factor (default 0.1)");
    auto* strategy_opt = app.add_option("--strategy", g.strategy, "Colour strategy: luminance, blue, perchannel");
    app.add_option("--seed", g.seed, "Seed for stochastic attacks and samples (SVDMARK_SEED overrides)");

    std::string cover, watermark, out, key, marked, id, claimed, reference, a_path, b_path, in_path, kind, alphas;
    std::vector<std::string> attacks;
    double threshold = 0.9, sigma = 0.0, scale = 0.5;
    std::vector<std::size_t> rect;
    std::size_t rows = 256, cols = 256;
    bool resize = false;

    auto* embed = app.add_subcommand("embed", "Semi-blind embedding");
    auto* embed_hash = app.add_subcommand("embed-hash", "Hash-code invisible embedding bound to an id");
    for (auto* sc : {embed, embed_hash}) {
        sc->add_option("--cover", cover, "Cover image (.pgm, .svdf or .ppm)")->required();
        sc->add_option("--watermark", watermark, "Watermark image (.pgm or .svdf)")->required();
        sc->add_option("--out", out, "Marked image output")->required();
        sc->add_option("--key", key, "Side info (key file) output")->required();
        sc->add_flag("--resize", resize, "Nearest-neighbour resize the watermark to the cover's shape");
    }
    embed_hash->add_option("--id", id, "Secret identity, e.g. name|nonce")->required();

    auto* extract = app.add_subcommand("extract", "Semi-blind extraction");
    auto* extract_hash = app.add_subcommand("extract-hash", "Hash-code extraction with the id");
    for (auto* sc : {extract, extract_hash}) {
        sc->add_option("--marked", marked, "Marked image")->required();
        sc->add_option("--key", key, "Side info file")->required();
        sc->add_option("--out", out, "Extracted watermark output")->required();
    }
    extract_hash->add_option("--id", id, "Secret identity")->required();

    auto* verify = app.add_subcommand("verify-hash", "Check a claimed watermark under an id");
    verify->add_option("--marked", marked, "Marked image")->required();
    verify->add_option("--key", key, "Side info file")->required();
    verify->add_option("--id", id, "Secret identity")->required();
    verify->add_option("--claimed", claimed, "Claimed watermark image")->required();
    verify->add_option("--threshold", threshold, "NC threshold in (0, 1) (default 0.9)");

    auto* detect = app.add_subcommand("detect-reference", "Search a marked image for a reference image");
    detect->add_option("--marked", marked, "Marked image")->required();
    detect->add_option("--key", key, "Semi-blind side info file")->required();
    detect->add_option("--reference", reference, "Reference image")->required();
    detect->add_option("--out", out, "Optional output for the recovered reference");

    auto* metrics = app.add_subcommand("metrics", "PSNR and normalized correlation between two images");
    metrics->add_option("--a", a_path, "First image")->required();
    metrics->add_option("--b", b_path, "Second image")->required();

    auto* attack = app.add_subcommand("attack", "Apply a distortion to an image");
    attack->add_option("--in", in_path, "Input image")->required();
    attack->add_option("--out", out, "Output image")->required();
    attack->add_option("--kind", kind, "noise, quant8, crop or rescale")->required();
    attack->add_option("--sigma", sigma, "Noise standard deviation");
    attack->add_option("--rect", rect, "Crop rectangle TOP LEFT HEIGHT WIDTH")->expected(4)->delimiter(',');
    attack->add_option("--scale", scale, "Rescale factor in (0, 1]");

    auto* sweep = app.add_subcommand("sweep", "Robustness sweep over alphas and attacks, CSV report");
    sweep->add_option("--cover", cover, "Cover image")->required();
    sweep->add_option("--watermark", watermark, "Watermark image")->required();
    sweep->add_option("--alphas", alphas, "Comma-separated alphas")->required();
    sweep->add_option("--attack", attacks, "Attack spec (repeatable): noise:S, quant8, crop:T:L:H:W, rescale:F")
        ->required();
    sweep->add_option("--out", out, "CSV output (stdout when omitted)");

    auto* synth = app.add_subcommand("synth", "Write a deterministic synthetic test image");
    synth->add_option("--kind", kind, "portrait, texture, plane or color")->required();
    synth->add_option("--rows", rows, "Rows (default 256)");
    synth->add_option("--cols", cols, "Columns (default 256)");
    synth->add_option("--out", out, "Output image")->required();

    app.require_subcommand(1);

    if (argc <= 1) {
        std::cerr << app.help();
        return exit_error;
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_error;
    }

    if (const char* env = std::getenv("SVDMARK_SEED"); env && *env) {
        try {
            g.seed = std::stoull(env);
        } catch (const std::logic_error&) {
            throw UsageError("SVDMARK_SEED must be an unsigned integer");
        }
    }
    const bool strategy_given = strategy_opt->count() > 0;
    if (strategy_given)
        parse_strategy(g.strategy);

    if (embed->parsed())
        return run_embed(g, cover, watermark, out, key, resize, std::nullopt);
    if (embed_hash->parsed())
        return run_embed(g, cover, watermark, out, key, resize, id);
    if (extract->parsed()) {
        MatrixPtr w = extract_any(g, strategy_given, marked, key, std::nullopt);
        write_mono(w.get(), out);
        return exit_ok;
    }
    if (extract_hash->parsed()) {
        MatrixPtr w = extract_any(g, strategy_given, marked, key, id);
        write_mono(w.get(), out);
        return exit_ok;
    }
    if (verify->parsed()) {
        if (key_is_bundle(key)) {
            MatrixPtr w = extract_any(g, strategy_given, marked, key, id);
            MatrixPtr c = read_mono(claimed);
            const double score = nc(w.get(), c.get());
            if (!(threshold > 0.0 && threshold < 1.0))
                throw UsageError("threshold must lie in (0, 1)");
            const bool ok = score >= threshold;
            std::cout << "nc=" << score << " threshold=" << threshold << " decision=" << (ok ? "Verified" : "Rejected")
                      << "\n";
            return ok ? exit_ok : exit_rejected;
        }
        SideInfoPtr info = load_key(key);
        MatrixPtr m = read_mono(marked);
        MatrixPtr c = read_mono(claimed);
        double score = 0.0;
        int ok = 0;
        check(svdmark_verify_hash(m.get(), info.get(), id_bytes(id), id.size(), c.get(), threshold, &score, &ok));
        std::cout << "nc=" << score << " threshold=" << threshold << " decision=" << (ok ? "Verified" : "Rejected")
                  << "\n";
        return ok ? exit_ok : exit_rejected;
    }
    if (detect->parsed()) {
        SideInfoPtr info = load_key(key);
        MatrixPtr m = read_mono(marked);
        MatrixPtr ref = read_mono(reference);
        svdmark_matrix *u = nullptr, *s = nullptr, *v = nullptr, *comp = nullptr, *p = nullptr;
        check(svdmark_svd(ref.get(), &u, &s, &v));
        MatrixPtr up(u), sp(s), vp(v);
        check(svdmark_extract_components(m.get(), info.get(), &comp));
        MatrixPtr comp_ptr(comp);
        check(svdmark_detect_reference(comp, v, &p));
        MatrixPtr p_ptr(p);
        if (!out.empty())
            write_mono(p, out);
        std::cout << "nc_reference=" << nc(p, ref.get()) << "\n";
        return exit_ok;
    }
    if (metrics->parsed()) {
        MatrixPtr a = read_mono(a_path);
        MatrixPtr b = read_mono(b_path);
        double p = 0.0;
        check(svdmark_psnr(a.get(), b.get(), &p));
        std::cout << "psnr_db=" << p << " nc=" << nc(a.get(), b.get()) << "\n";
        return exit_ok;
    }
    if (attack->parsed()) {
        svdmark_attack spec{};
        spec.seed = g.seed;
        spec.scale = scale;
        if (kind == "noise") {
            spec.kind = SVDMARK_ATTACK_GAUSSIAN_NOISE;
            spec.sigma = sigma;
        } else if (kind == "quant8") {
            spec.kind = SVDMARK_ATTACK_QUANTIZE8;
        } else if (kind == "crop") {
            if (rect.size() != 4)
                throw UsageError("crop needs --rect TOP,LEFT,HEIGHT,WIDTH");
            spec.kind = SVDMARK_ATTACK_CROP;
            for (std::size_t i = 0; i < 4; ++i)
                spec.rect[i] = rect[i];
        } else if (kind == "rescale") {
            spec.kind = SVDMARK_ATTACK_RESCALE;
        } else {
            throw UsageError("unknown attack kind '" + kind + "'");
        }
        MatrixPtr img = read_mono(in_path);
        svdmark_matrix* res = nullptr;
        check(svdmark_apply_attack(img.get(), &spec, &res));
        MatrixPtr res_ptr(res);
        write_mono(res, out);
        return exit_ok;
    }
    if (sweep->parsed()) {
        MatrixPtr c = read_mono(cover);
        MatrixPtr w = read_mono(watermark);
        const std::vector<double> alpha_list = parse_alphas(alphas);
        std::vector<svdmark_attack> specs;
        for (const auto& a : attacks)
            specs.push_back(parse_attack(a, g.seed));
        svdmark_report* r = nullptr;
        check(svdmark_sweep(c.get(), w.get(), alpha_list.data(), alpha_list.size(), specs.data(), specs.size(), &r));
        ReportPtr report(r);
        std::size_t needed = 0;
        check(svdmark_report_csv(r, nullptr, 0, &needed));
        std::string csv(needed, '\0');
        check(svdmark_report_csv(r, csv.data(), csv.size(), &needed));
        csv.pop_back();
        if (out.empty()) {
            std::cout << csv;
        } else {
            const std::string tmp = out + ".tmp";
            {
                std::ofstream f(tmp, std::ios::binary);
                f << csv;
                if (!f)
                    throw UsageError("cannot write " + out);
            }
            std::filesystem::rename(tmp, out);
        }
        return exit_ok;
    }
    if (synth->parsed()) {
        if (kind == "color") {
            svdmark_rgb* img = nullptr;
            check(svdmark_sample_rgb(rows, cols, g.seed, 0.0, 255.0, &img));
            RgbPtr p(img);
            check(svdmark_write_ppm(img, out.c_str()));
            return exit_ok;
        }
        const std::map<std::string, svdmark_sample_kind> kinds{
            {"portrait", SVDMARK_SAMPLE_PORTRAIT}, {"texture", SVDMARK_SAMPLE_TEXTURE}, {"plane", SVDMARK_SAMPLE_PLANE}};
        const auto it = kinds.find(kind);
        if (it == kinds.end())
            throw UsageError("unknown sample kind '" + kind + "'");
        svdmark_matrix* m = nullptr;
        check(svdmark_sample_image(it->second, rows, cols, g.seed, &m));
        MatrixPtr p(m);
        write_mono(m, out);
        return exit_ok;
    }
    std::cerr << app.help();
    return exit_error;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ApiError& e) {
        std::cerr << "error: " << e.what() << "\n";
    } catch (const UsageError& e) {
        std::cerr << "error: Usage: " << e.what() << "\n";
    } catch (const std::exception& e) {
        std::cerr << "error: Internal: " << e.what() << "\n";
    }
    return exit_error;
}
