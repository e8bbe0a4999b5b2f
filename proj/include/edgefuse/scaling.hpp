#pragma once

#include <utility>

#include "edgefuse/image.hpp"

namespace edgefuse {

enum class ThresholdMode {
    absolute,   // low/high are response values
    percentile  // high is a quantile level of the nonzero responses; low is a fraction of that threshold
};

/// Two-threshold binarization parameters, 0 <= low <= high <= 1.
class HysteresisParams {
public:
    /// Throws std::invalid_argument when the ordering or range is violated.
    HysteresisParams(double low, double high, ThresholdMode mode = ThresholdMode::absolute);

    /// Percentile mode, high = 0.95 quantile of nonzero responses, low = 0.4 * high.
    static HysteresisParams defaults() { return {0.4, 0.95, ThresholdMode::percentile}; }

    [[nodiscard]] double low() const noexcept { return low_; }
    [[nodiscard]] double high() const noexcept { return high_; }
    [[nodiscard]] ThresholdMode mode() const noexcept { return mode_; }

private:
    double low_;
    double high_;
    ThresholdMode mode_;
};

/// Central-difference gradient direction reduced modulo pi. Requires at least 3x3.
[[nodiscard]] OrientationField estimate_orientation(const GrayImage& img);

/// Orientation quantized to one of four sectors: 0, pi/4, pi/2, 3pi/4 -> 0..3.
[[nodiscard]] int orientation_sector(double angle) noexcept;

/// Keeps a pixel iff it is >= both neighbours along its quantized normal; zero otherwise.
/// Out-of-image neighbours are replicated border pixels.
[[nodiscard]] GrayImage nms(const GrayImage& response, const OrientationField& orientation);

/// Absolute (low, high) thresholds for an NMS output under the given parameters.
[[nodiscard]] std::pair<double, double> resolve_thresholds(const GrayImage& thin, const HysteresisParams& params);

/// Pixels >= high seed edges; pixels >= low join when 8-connected to a seed.
[[nodiscard]] EdgeMap hysteresis(const GrayImage& thin, const HysteresisParams& params);

}  // namespace edgefuse
