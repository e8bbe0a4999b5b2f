#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "edgefuse/image.hpp"

namespace edgefuse::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo = 0.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

// Draws from a small value set with probability `tie_rate` so ties are common.
inline std::vector<double> random_vector(Rng& rng, int n, double tie_rate = 0.2) {
    static constexpr double kLevels[] = {0.0, 0.25, 0.5, 1.0};
    std::vector<double> v(static_cast<std::size_t>(n));
    for (double& x : v) {
        x = uniform(rng) < tie_rate ? kLevels[uniform_int(rng, 0, 3)] : uniform(rng);
    }
    return v;
}

inline GrayImage random_image(Rng& rng, int rows, int cols) {
    GrayImage img(rows, cols);
    for (double& v : img.pixels()) {
        v = uniform(rng);
    }
    return img;
}

// Two flat regions separated by a vertical boundary at x = col + 0.25:
// column `col` is anti-aliased to a + 0.25 (b - a).
inline GrayImage step_image(int rows, int cols, int col, double a = 0.2, double b = 0.8) {
    GrayImage img(rows, cols, a);
    for (int r = 0; r < rows; ++r) {
        img(r, col) = a + 0.25 * (b - a);
        for (int c = col + 1; c < cols; ++c) {
            img(r, c) = b;
        }
    }
    return img;
}

}  // namespace edgefuse::testing
