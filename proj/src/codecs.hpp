#pragma once

#include "color_adapt.hpp"
#include "matrix.hpp"
#include "side_info.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace svdmark {

// All writers go through a temporary file in the target directory and an
// atomic rename, so a failed write never leaves a truncated output behind.

/// Binary "P5" with maxval 255. Entries are rounded and clipped on write.
Matrix read_pgm(const std::filesystem::path& path);
void write_pgm(const Matrix& m, const std::filesystem::path& path);

/// Binary "P6" with maxval 255, interleaved RGB.
RgbImage read_ppm(const std::filesystem::path& path);
void write_ppm(const RgbImage& img, const std::filesystem::path& path);

/// Lossless float carrier: "SVDF", u16 version, u32 rows, u32 cols, then
/// rows * cols little-endian IEEE-754 doubles, row-major. All integers LE.
inline constexpr std::uint16_t svdf_version = 1;
std::vector<std::uint8_t> encode_svdf(const Matrix& m);
Matrix decode_svdf(const std::vector<std::uint8_t>& bytes);
Matrix read_svdf(const std::filesystem::path& path);
void write_svdf(const Matrix& m, const std::filesystem::path& path);

/// Chooses the codec from the extension: .pgm, .svdf (mono) or .ppm (colour).
Matrix read_mono(const std::filesystem::path& path);
void write_mono(const Matrix& m, const std::filesystem::path& path);

/// JSON key files. Arrays are base64 of the exact little-endian doubles.
inline constexpr int sideinfo_version = 1;
std::string encode_sideinfo(const SideInfo& info);
SideInfo decode_sideinfo(const std::string& text);
void save_sideinfo(const SideInfo& info, const std::filesystem::path& path);
SideInfo load_sideinfo(const std::filesystem::path& path);

std::string encode_bundle(const SideInfoBundle& bundle);
SideInfoBundle decode_bundle(const std::string& text);
void save_bundle(const SideInfoBundle& bundle, const std::filesystem::path& path);
SideInfoBundle load_bundle(const std::filesystem::path& path);

/// True when the key file text holds a colour bundle rather than a single SideInfo.
bool is_bundle(const std::string& text);

std::string base64_encode(const std::vector<std::uint8_t>& bytes);
std::vector<std::uint8_t> base64_decode(const std::string& text);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file_atomic(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes);

} // namespace svdmark
