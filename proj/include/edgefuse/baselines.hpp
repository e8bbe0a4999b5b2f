#pragma once

// Comparison detectors. Each produces a blended response in [0,1] that goes
// through the same scaling stage as the Choquet-based detectors.

#include <array>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "edgefuse/aggregation.hpp"
#include "edgefuse/image.hpp"

namespace edgefuse {

struct CannyBaseline {
    double sigma1 = 1.0;   // zero-th order smoothing
    double sigma2 = 2.25;  // first-order derivative filters
};

struct GravitationalBaseline {
    std::string conorm = "prob_sum";  // "prob_sum" or "max"
};

struct FuzzyMorphologyBaseline {
    double lambda = -5.0;
    int radius = 1;
    double off_centre_weight = 1.0;  // 1 gives a flat structuring element
};

using BaselineConfig = std::variant<CannyBaseline, GravitationalBaseline, FuzzyMorphologyBaseline>;

/// Largest |sum_{v in H} v| over half-planes H, i.e. the largest norm of
/// sum_i w_i v_i with weights w_i in [0,1].
[[nodiscard]] double max_weighted_norm(std::span<const std::array<double, 2>> vectors);

/// Antisymmetric first-order Gaussian derivative taps (half-width ceil(3 sigma)),
/// scaled so a unit ramp gives a unit response.
[[nodiscard]] std::vector<double> gaussian_derivative_kernel(double sigma);

/// Euclidean norm of the Gaussian-derivative gradient (sigma2), divided by the
/// largest response the filter pair can produce on [0,1] images.
[[nodiscard]] GrayImage gaussian_gradient_blend(const GrayImage& img, double sigma2);

/// Gaussian smoothing with sigma1 followed by gaussian_gradient_blend(sigma2).
[[nodiscard]] GrayImage canny_blend(const GrayImage& img, double sigma1, double sigma2);

/// Net 3x3 attraction with Newton's mass product replaced by a t-conorm:
/// sum_q S(I_p, I_q) r_q / |r_q|^3, as a magnitude normalized to [0,1].
/// Throws std::invalid_argument unless the function is flagged as a t-conorm.
[[nodiscard]] GrayImage gravitational_edge_blend(const GrayImage& img, const FusionFunction& conorm);

/// Morphological gradient with Schweizer-Sklar operators:
///   dilation(p) = max_o T(B(o), A(p+o)),  erosion(p) = min_o S(1 - B(o), A(p+o)),
/// result = clamp(dilation - erosion). B is 1 at the centre and off_centre_weight elsewhere.
[[nodiscard]] GrayImage fuzzy_morphology_blend(const GrayImage& img, double lambda = -5.0, int radius = 1,
                                               double off_centre_weight = 1.0);

/// Dispatches on the baseline variant. The Canny sigma1 stage is skipped here:
/// the input is expected to be already conditioned.
[[nodiscard]] GrayImage baseline_blend(const GrayImage& conditioned, const BaselineConfig& config);

}  // namespace edgefuse
