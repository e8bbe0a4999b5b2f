#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include "edgefuse/image.hpp"

namespace edgefuse {

/// Reads PNG or PNM (P1-P6) by content signature. Colour input is reduced with
/// Rec. 601 luma weights; samples are normalized by the format's maximum value.
/// Throws std::runtime_error with the path in the message on failure.
[[nodiscard]] GrayImage read_gray_image(const std::filesystem::path& path);

/// Reads a binary ground-truth or edge map: PBM bit 1, or any non-zero PNG/PGM sample, is an edge.
[[nodiscard]] EdgeMap read_edge_map(const std::filesystem::path& path);

/// 8-bit grayscale, each sample round(255 v). Format from extension: .png or .pgm.
void write_gray_image(const std::filesystem::path& path, const GrayImage& img);

/// 1-bit image, edges white in PNG and bit 1 in PBM. Format from extension: .png or .pbm.
void write_edge_map(const std::filesystem::path& path, const EdgeMap& edges);

/// Headerless little-endian float64 stream.
void write_raw_f64(const std::filesystem::path& path, std::span<const double> values);
[[nodiscard]] std::vector<double> read_raw_f64(const std::filesystem::path& path, std::size_t count);

/// Single-plane raw dump of a double-precision image (row-major).
void write_raw_gray(const std::filesystem::path& path, const GrayImage& img);
[[nodiscard]] GrayImage read_raw_gray(const std::filesystem::path& path, int rows, int cols);

[[nodiscard]] bool is_supported_image(const std::filesystem::path& path);

}  // namespace edgefuse
