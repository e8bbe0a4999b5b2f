#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "edgefuse/image.hpp"

namespace edgefuse {

struct GaussianSmoothing {
    double sigma = 1.0;
};

/// Content-aware smoothing: each pixel is a unit-mass particle at
/// (row, col, tonal_weight * intensity); per iteration every particle's tonal
/// coordinate moves by the tonal component of the inverse-square attraction
/// exerted by the particles inside its spatial window.
struct GravitationalSmoothing {
    double gravity = 0.05;
    double tonal_weight = 20.0;  // omega_c
    int iterations = 30;
    int window_radius = 5;
};

using SmoothingConfig = std::variant<GaussianSmoothing, GravitationalSmoothing>;

/// Throws std::invalid_argument when a parameter is out of range.
void validate(const SmoothingConfig& config);

/// Named presets s1..s4 (case-insensitive). Throws std::invalid_argument otherwise.
[[nodiscard]] SmoothingConfig smoothing_preset(std::string_view name);
[[nodiscard]] std::vector<std::string> smoothing_preset_names();
[[nodiscard]] std::string describe(const SmoothingConfig& config);

/// Normalized 1-D Gaussian taps, half-width ceil(3 sigma); entry i is offset i - half_width.
[[nodiscard]] std::vector<double> gaussian_kernel(double sigma);

/// 2-D Gaussian convolution with replicate padding (separable evaluation).
[[nodiscard]] GrayImage gaussian_smooth(const GrayImage& img, double sigma);

/// Jacobi iteration of the gravitational smoother; the image is unchanged in shape.
[[nodiscard]] GrayImage gravitational_smooth(const GrayImage& img, const GravitationalSmoothing& config);

[[nodiscard]] GrayImage condition(const GrayImage& img, const SmoothingConfig& config);

}  // namespace edgefuse
