#include "edgefuse/features.hpp"

#include "edgefuse/image_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace edgefuse {

FeatureImage extract_features(const GrayImage& img) {
    if (img.rows() < 3 || img.cols() < 3) {
        throw std::invalid_argument("extract_features: image must be at least 3x3");
    }
    FeatureImage out(img.rows(), img.cols());
    for (int r = 0; r < img.rows(); ++r) {
        for (int c = 0; c < img.cols(); ++c) {
            const double centre = img(r, c);
            FeatureVector& f = out(r, c);
            for (std::size_t k = 0; k < kNeighbourOffsets.size(); ++k) {
                const auto [dr, dc] = kNeighbourOffsets[k];
                f[k] = std::abs(centre - img.clamped(r + dr, c + dc));
            }
            std::sort(f.begin(), f.end());
        }
    }
    return out;
}

GrayImage blend(const FeatureImage& features, const IntegralChoice& integral, const CardinalityMeasure& measure) {
    if (measure.arity() != kNeighbourCount) {
        throw std::invalid_argument("blend: measure arity must be 8");
    }
    if (features.rows() < 1 || features.cols() < 1) {
        throw std::invalid_argument("blend: empty feature image");
    }
    GrayImage out(features.rows(), features.cols());
    for (int r = 0; r < features.rows(); ++r) {
        for (int c = 0; c < features.cols(); ++c) {
            const double v = integral.evaluate(SortedInput(features(r, c)), measure);
            // C_T sums can exceed 1 only through rounding; C_F already applies min{1, .}.
            out(r, c) = std::clamp(v, 0.0, 1.0);
        }
    }
    return out;
}

void write_feature_raw(const std::filesystem::path& path, const FeatureImage& features) {
    std::vector<double> flat;
    flat.reserve(features.size() * kNeighbourCount);
    for (const auto& vec : features.pixels()) {
        flat.insert(flat.end(), vec.begin(), vec.end());
    }
    write_raw_f64(path, flat);
}

FeatureImage read_feature_raw(const std::filesystem::path& path, int rows, int cols) {
    FeatureImage out(rows, cols);
    const auto flat = read_raw_f64(path, out.size() * kNeighbourCount);
    for (std::size_t i = 0; i < out.size(); ++i) {
        std::copy_n(flat.begin() + static_cast<std::ptrdiff_t>(i * kNeighbourCount), kNeighbourCount,
                    out.pixels()[i].begin());
    }
    return out;
}

}  // namespace edgefuse
