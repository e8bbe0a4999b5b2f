#pragma once

#include <array>
#include <filesystem>

#include "edgefuse/aggregation.hpp"
#include "edgefuse/image.hpp"

namespace edgefuse {

inline constexpr int kNeighbourCount = 8;

/// Absolute differences to the 8 neighbours, ascending.
using FeatureVector = std::array<double, kNeighbourCount>;

/// Per-pixel sorted feature vectors; every component lies in [0,1].
using FeatureImage = Grid<FeatureVector>;

/// 3x3 neighbour offsets (dr, dc) in raster order, centre excluded.
inline constexpr std::array<std::array<int, 2>, kNeighbourCount> kNeighbourOffsets = {{
    {-1, -1}, {-1, 0}, {-1, 1}, {0, -1}, {0, 1}, {1, -1}, {1, 0}, {1, 1},
}};

/// Throws std::invalid_argument for images smaller than 3x3. Borders use replicate padding.
[[nodiscard]] FeatureImage extract_features(const GrayImage& img);

/// Applies the chosen integral to every pixel's sorted feature vector.
/// Throws std::invalid_argument unless measure.arity() == 8.
[[nodiscard]] GrayImage blend(const FeatureImage& features, const IntegralChoice& integral,
                              const CardinalityMeasure& measure);

/// Writes features as raw little-endian float64, row-major with the 8 planes
/// interleaved per pixel (plane-minor). No header.
void write_feature_raw(const std::filesystem::path& path, const FeatureImage& features);
[[nodiscard]] FeatureImage read_feature_raw(const std::filesystem::path& path, int rows, int cols);

}  // namespace edgefuse
