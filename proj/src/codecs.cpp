#include "codecs.hpp"

#include "error.hpp"

#include <json.hpp>
#include <openssl/evp.h>

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <random>

namespace svdmark {

namespace {

using nlohmann::json;

static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);

void put_le(std::vector<std::uint8_t>& out, std::uint64_t v, int bytes) {
    for (int i = 0; i < bytes; ++i)
        out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint64_t get_le(const std::uint8_t* p, int bytes) {
    std::uint64_t v = 0;
    for (int i = 0; i < bytes; ++i)
        v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
    return v;
}

std::vector<std::uint8_t> doubles_to_bytes(std::span<const double> values) {
    std::vector<std::uint8_t> out;
    out.reserve(values.size() * 8);
    for (double v : values)
        put_le(out, std::bit_cast<std::uint64_t>(v), 8);
    return out;
}

std::vector<double> bytes_to_doubles(const std::uint8_t* p, std::size_t count) {
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i)
        out[i] = std::bit_cast<double>(get_le(p + 8 * i, 8));
    return out;
}

std::uint8_t to_byte(double v) {
    return static_cast<std::uint8_t>(std::clamp(std::round(v), 0.0, 255.0));
}

// Netpbm header: magic, width, height, maxval, one whitespace byte.
struct PnmHeader {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::size_t offset = 0;
};

PnmHeader parse_pnm_header(const std::vector<std::uint8_t>& bytes, char expected) {
    if (bytes.size() < 2 || bytes[0] != 'P')
        fail(ErrorCode::CodecError, "not a netpbm file");
    if (bytes[1] != static_cast<std::uint8_t>(expected))
        fail(ErrorCode::UnsupportedFormat, std::string("expected P") + expected + " netpbm, found P"
                                               + static_cast<char>(bytes[1]));
    std::size_t pos = 2;
    auto next_number = [&]() -> std::size_t {
        for (;;) {
            while (pos < bytes.size() && std::isspace(bytes[pos]))
                ++pos;
            if (pos < bytes.size() && bytes[pos] == '#') {
                while (pos < bytes.size() && bytes[pos] != '\n')
                    ++pos;
                continue;
            }
            break;
        }
        if (pos >= bytes.size() || !std::isdigit(bytes[pos]))
            fail(ErrorCode::CodecError, "malformed netpbm header");
        std::size_t value = 0;
        while (pos < bytes.size() && std::isdigit(bytes[pos])) {
            value = value * 10 + static_cast<std::size_t>(bytes[pos] - '0');
            if (value > (1u << 30))
                fail(ErrorCode::CodecError, "netpbm header value out of range");
            ++pos;
        }
        return value;
    };
    PnmHeader h;
    h.cols = next_number();
    h.rows = next_number();
    const std::size_t maxval = next_number();
    if (h.rows == 0 || h.cols == 0)
        fail(ErrorCode::CodecError, "netpbm image has zero extent");
    if (maxval != 255)
        fail(ErrorCode::UnsupportedFormat, "only maxval 255 is supported, found " + std::to_string(maxval));
    if (pos >= bytes.size() || !std::isspace(bytes[pos]))
        fail(ErrorCode::CodecError, "malformed netpbm header");
    h.offset = pos + 1;
    return h;
}

std::vector<std::uint8_t> pnm_header(char magic, std::size_t rows, std::size_t cols) {
    const std::string text = std::string("P") + magic + "\n" + std::to_string(cols) + " " + std::to_string(rows)
                             + "\n255\n";
    return {text.begin(), text.end()};
}

json matrix_json(const Matrix& m) {
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", base64_encode(doubles_to_bytes(m.data()))}};
}

std::vector<double> decode_doubles(const std::string& b64, std::size_t expected) {
    const std::vector<std::uint8_t> raw = base64_decode(b64);
    if (raw.size() != expected * 8)
        fail(ErrorCode::CodecError, "array length " + std::to_string(raw.size()) + " bytes, expected "
                                        + std::to_string(expected * 8));
    return bytes_to_doubles(raw.data(), expected);
}

Matrix matrix_from_json(const json& j, const char* name) {
    if (!j.contains(name) || !j[name].is_object())
        fail(ErrorCode::MalformedSideInfo, std::string("side info lacks array '") + name + "'");
    const json& m = j[name];
    const auto rows = m.at("rows").get<std::size_t>();
    const auto cols = m.at("cols").get<std::size_t>();
    if (rows == 0 || cols == 0)
        fail(ErrorCode::MalformedSideInfo, std::string("array '") + name + "' has zero extent");
    return Matrix(rows, cols, decode_doubles(m.at("data").get<std::string>(), rows * cols));
}

json sideinfo_json(const SideInfo& info) {
    std::vector<double> diag(std::min(info.rows, info.cols));
    for (std::size_t i = 0; i < diag.size(); ++i)
        diag[i] = info.s(i, i);
    json j = {
        {"format", "svdmark-sideinfo"},
        {"version", sideinfo_version},
        {"scheme_tag", scheme_name(info.scheme)},
        {"alpha", info.alpha},
        {"rows", info.rows},
        {"cols", info.cols},
        {"u", matrix_json(info.u)},
        {"s_layout", "diag"},
        {"s", base64_encode(doubles_to_bytes(diag))},
        {"v", matrix_json(info.v)},
        {"v_w", matrix_json(info.v_w)},
    };
    if (info.quant)
        j["quant"] = {{"lo", info.quant->lo}, {"hi", info.quant->hi}, {"degenerate", info.quant->degenerate}};
    return j;
}

SideInfo sideinfo_from_json(const json& j) {
    if (!j.is_object())
        fail(ErrorCode::CodecError, "side info is not a JSON object");
    if (!j.contains("version") || !j["version"].is_number_integer())
        fail(ErrorCode::MalformedSideInfo, "side info lacks a version");
    if (j["version"].get<int>() != sideinfo_version)
        fail(ErrorCode::UnsupportedVersion, "side info version " + j["version"].dump() + " is not supported");

    SideInfo info;
    const std::string tag = j.at("scheme_tag").get<std::string>();
    if (tag == "SemiBlind")
        info.scheme = Scheme::SemiBlind;
    else if (tag == "HashCode")
        info.scheme = Scheme::HashCode;
    else
        fail(ErrorCode::MalformedSideInfo, "unknown scheme_tag '" + tag + "'");

    info.alpha = j.at("alpha").get<double>();
    info.rows = j.at("rows").get<std::size_t>();
    info.cols = j.at("cols").get<std::size_t>();
    if (info.rows == 0 || info.cols == 0)
        fail(ErrorCode::MalformedSideInfo, "side info has zero extent");
    info.u = matrix_from_json(j, "u");
    info.v = matrix_from_json(j, "v");
    info.v_w = matrix_from_json(j, "v_w");

    const std::string layout = j.value("s_layout", "diag");
    if (layout == "diag") {
        const std::vector<double> diag =
            decode_doubles(j.at("s").get<std::string>(), std::min(info.rows, info.cols));
        info.s = Matrix::diagonal(info.rows, info.cols, diag);
    } else if (layout == "full") {
        info.s = Matrix(info.rows, info.cols, decode_doubles(j.at("s").get<std::string>(), info.rows * info.cols));
    } else {
        fail(ErrorCode::MalformedSideInfo, "unknown s_layout '" + layout + "'");
    }

    if (j.contains("quant")) {
        const json& q = j["quant"];
        info.quant = QuantParams{q.at("lo").get<double>(), q.at("hi").get<double>(), q.at("degenerate").get<bool>()};
    }
    validate(info);
    return info;
}

ChannelStrategy strategy_from_name(const std::string& name) {
    for (auto s : {ChannelStrategy::Luminance, ChannelStrategy::BlueChannel, ChannelStrategy::PerChannel})
        if (name == strategy_name(s))
            return s;
    fail(ErrorCode::MalformedSideInfo, "unknown strategy '" + name + "'");
}

// nlohmann exceptions become codec errors; our own errors pass through.
template <class F>
auto guarded_json(F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const json::exception& e) {
        fail(ErrorCode::CodecError, std::string("key file: ") + e.what());
    }
}

std::string read_text(const std::filesystem::path& path) {
    const auto bytes = read_file(path);
    return {bytes.begin(), bytes.end()};
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    write_file_atomic(path, std::vector<std::uint8_t>(text.begin(), text.end()));
}

std::string lower_extension(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    return ext;
}

} // namespace

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail(ErrorCode::IoError, "cannot open " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad())
        fail(ErrorCode::IoError, "cannot read " + path.string());
    return bytes;
}

void write_file_atomic(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes) {
    std::random_device rd;
    std::filesystem::path tmp = path;
    tmp += ".tmp" + std::to_string(rd());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            fail(ErrorCode::IoError, "cannot create " + tmp.string());
        out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
        out.flush();
        if (!out) {
            out.close();
            std::error_code ignored;
            std::filesystem::remove(tmp, ignored);
            fail(ErrorCode::IoError, "cannot write " + path.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        fail(ErrorCode::IoError, "cannot move output into place at " + path.string());
    }
}

Matrix read_pgm(const std::filesystem::path& path) {
    const auto bytes = read_file(path);
    const PnmHeader h = parse_pnm_header(bytes, '5');
    if (bytes.size() - h.offset < h.rows * h.cols)
        fail(ErrorCode::CodecError, "truncated PGM payload in " + path.string());
    return Matrix(h.rows, h.cols, std::vector<double>(bytes.begin() + static_cast<std::ptrdiff_t>(h.offset),
                                                      bytes.begin() + static_cast<std::ptrdiff_t>(h.offset + h.rows * h.cols)));
}

void write_pgm(const Matrix& m, const std::filesystem::path& path) {
    std::vector<std::uint8_t> out = pnm_header('5', m.rows(), m.cols());
    for (double v : m.data())
        out.push_back(to_byte(v));
    write_file_atomic(path, out);
}

RgbImage read_ppm(const std::filesystem::path& path) {
    const auto bytes = read_file(path);
    const PnmHeader h = parse_pnm_header(bytes, '6');
    const std::size_t n = h.rows * h.cols;
    if (bytes.size() - h.offset < 3 * n)
        fail(ErrorCode::CodecError, "truncated PPM payload in " + path.string());
    std::vector<double> r(n), g(n), b(n);
    const std::uint8_t* p = bytes.data() + h.offset;
    for (std::size_t i = 0; i < n; ++i) {
        r[i] = p[3 * i];
        g[i] = p[3 * i + 1];
        b[i] = p[3 * i + 2];
    }
    return RgbImage(Matrix(h.rows, h.cols, std::move(r)), Matrix(h.rows, h.cols, std::move(g)),
                    Matrix(h.rows, h.cols, std::move(b)));
}

void write_ppm(const RgbImage& img, const std::filesystem::path& path) {
    std::vector<std::uint8_t> out = pnm_header('6', img.rows(), img.cols());
    const auto r = img.r.data();
    const auto g = img.g.data();
    const auto b = img.b.data();
    for (std::size_t i = 0; i < r.size(); ++i) {
        out.push_back(to_byte(r[i]));
        out.push_back(to_byte(g[i]));
        out.push_back(to_byte(b[i]));
    }
    write_file_atomic(path, out);
}

std::vector<std::uint8_t> encode_svdf(const Matrix& m) {
    std::vector<std::uint8_t> out{'S', 'V', 'D', 'F'};
    put_le(out, svdf_version, 2);
    put_le(out, m.rows(), 4);
    put_le(out, m.cols(), 4);
    const auto payload = doubles_to_bytes(m.data());
    out.insert(out.end(), payload.begin(), payload.end());
    return out;
}

Matrix decode_svdf(const std::vector<std::uint8_t>& bytes) {
    constexpr std::size_t header = 14;
    if (bytes.size() < header || !std::equal(bytes.begin(), bytes.begin() + 4, "SVDF"))
        fail(ErrorCode::CodecError, "not an SVDF file");
    const auto version = get_le(bytes.data() + 4, 2);
    if (version != svdf_version)
        fail(ErrorCode::UnsupportedVersion, "SVDF version " + std::to_string(version) + " is not supported");
    const auto rows = static_cast<std::size_t>(get_le(bytes.data() + 6, 4));
    const auto cols = static_cast<std::size_t>(get_le(bytes.data() + 10, 4));
    if (rows == 0 || cols == 0)
        fail(ErrorCode::CodecError, "SVDF image has zero extent");
    if (bytes.size() - header != rows * cols * 8)
        fail(ErrorCode::CodecError, "SVDF payload length does not match " + std::to_string(rows) + "x"
                                        + std::to_string(cols));
    return Matrix(rows, cols, bytes_to_doubles(bytes.data() + header, rows * cols));
}

Matrix read_svdf(const std::filesystem::path& path) {
    return decode_svdf(read_file(path));
}

void write_svdf(const Matrix& m, const std::filesystem::path& path) {
    write_file_atomic(path, encode_svdf(m));
}

Matrix read_mono(const std::filesystem::path& path) {
    const std::string ext = lower_extension(path);
    if (ext == ".svdf")
        return read_svdf(path);
    if (ext == ".pgm")
        return read_pgm(path);
    fail(ErrorCode::UnsupportedFormat, "unsupported single-channel image extension '" + ext + "'");
}

void write_mono(const Matrix& m, const std::filesystem::path& path) {
    const std::string ext = lower_extension(path);
    if (ext == ".svdf")
        return write_svdf(m, path);
    if (ext == ".pgm")
        return write_pgm(m, path);
    fail(ErrorCode::UnsupportedFormat, "unsupported single-channel image extension '" + ext + "'");
}

std::string encode_sideinfo(const SideInfo& info) {
    validate(info);
    return sideinfo_json(info).dump(1) + "\n";
}

SideInfo decode_sideinfo(const std::string& text) {
    return guarded_json([&] { return sideinfo_from_json(json::parse(text)); });
}

void save_sideinfo(const SideInfo& info, const std::filesystem::path& path) {
    write_text(path, encode_sideinfo(info));
}

SideInfo load_sideinfo(const std::filesystem::path& path) {
    return decode_sideinfo(read_text(path));
}

std::string encode_bundle(const SideInfoBundle& bundle) {
    json channels = json::array();
    for (const SideInfo& info : bundle.infos) {
        validate(info);
        channels.push_back(sideinfo_json(info));
    }
    const json j = {{"format", "svdmark-bundle"},
                    {"version", sideinfo_version},
                    {"strategy", strategy_name(bundle.strategy)},
                    {"channels", channels}};
    return j.dump(1) + "\n";
}

SideInfoBundle decode_bundle(const std::string& text) {
    return guarded_json([&] {
        const json j = json::parse(text);
        if (j.value("format", "") != "svdmark-bundle")
            fail(ErrorCode::MalformedSideInfo, "not a side info bundle");
        if (j.at("version").get<int>() != sideinfo_version)
            fail(ErrorCode::UnsupportedVersion, "bundle version " + j["version"].dump() + " is not supported");
        SideInfoBundle bundle{strategy_from_name(j.at("strategy").get<std::string>()), {}};
        for (const json& c : j.at("channels"))
            bundle.infos.push_back(sideinfo_from_json(c));
        const std::size_t expected = bundle.strategy == ChannelStrategy::PerChannel ? 3 : 1;
        if (bundle.infos.size() != expected)
            fail(ErrorCode::MalformedSideInfo, "bundle channel count does not match its strategy");
        return bundle;
    });
}

void save_bundle(const SideInfoBundle& bundle, const std::filesystem::path& path) {
    write_text(path, encode_bundle(bundle));
}

SideInfoBundle load_bundle(const std::filesystem::path& path) {
    return decode_bundle(read_text(path));
}

bool is_bundle(const std::string& text) {
    return guarded_json([&] {
        const json j = json::parse(text);
        return j.is_object() && j.value("format", "") == "svdmark-bundle";
    });
}

std::string base64_encode(const std::vector<std::uint8_t>& bytes) {
    std::string out(4 * ((bytes.size() + 2) / 3), '\0');
    const int n = EVP_EncodeBlock(reinterpret_cast<unsigned char*>(out.data()), bytes.data(),
                                  static_cast<int>(bytes.size()));
    out.resize(static_cast<std::size_t>(n));
    return out;
}

std::vector<std::uint8_t> base64_decode(const std::string& text) {
    if (text.size() % 4 != 0)
        fail(ErrorCode::CodecError, "base64 length is not a multiple of 4");
    for (char c : text)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '+' || c == '/' || c == '='))
            fail(ErrorCode::CodecError, "invalid base64 character");
    std::vector<std::uint8_t> out(3 * (text.size() / 4));
    const int n = EVP_DecodeBlock(out.data(), reinterpret_cast<const unsigned char*>(text.data()),
                                  static_cast<int>(text.size()));
    if (n < 0)
        fail(ErrorCode::CodecError, "corrupt base64 payload");
    std::size_t padding = 0;
    if (!text.empty() && text.back() == '=')
        padding = text.size() >= 2 && text[text.size() - 2] == '=' ? 2 : 1;
    out.resize(static_cast<std::size_t>(n) - padding);
    return out;
}

} // namespace svdmark
