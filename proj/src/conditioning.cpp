#include "edgefuse/conditioning.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace edgefuse {

void validate(const SmoothingConfig& config) {
    if (const auto* g = std::get_if<GaussianSmoothing>(&config)) {
        if (!(g->sigma > 0.0) || !std::isfinite(g->sigma)) {
            throw std::invalid_argument("gaussian smoothing: sigma must be positive");
        }
        return;
    }
    const auto& gs = std::get<GravitationalSmoothing>(config);
    if (!(gs.gravity > 0.0) || !std::isfinite(gs.gravity)) {
        throw std::invalid_argument("gravitational smoothing: G must be positive");
    }
    if (!(gs.tonal_weight > 0.0) || !std::isfinite(gs.tonal_weight)) {
        throw std::invalid_argument("gravitational smoothing: omega_c must be positive");
    }
    if (gs.iterations < 1) {
        throw std::invalid_argument("gravitational smoothing: at least one iteration required");
    }
    if (gs.window_radius < 1) {
        throw std::invalid_argument("gravitational smoothing: window radius must be positive");
    }
}

SmoothingConfig smoothing_preset(std::string_view name) {
    std::string key(name);
    std::transform(key.begin(), key.end(), key.begin(), [](unsigned char ch) { return std::tolower(ch); });
    if (key == "s1") return GaussianSmoothing{1.0};
    if (key == "s2") return GaussianSmoothing{2.0};
    if (key == "s3") return GravitationalSmoothing{0.05, 20.0, 30, 5};
    if (key == "s4") return GravitationalSmoothing{0.05, 70.0, 50, 5};
    throw std::invalid_argument("unknown smoothing preset '" + std::string(name) + "'");
}

std::vector<std::string> smoothing_preset_names() { return {"s1", "s2", "s3", "s4"}; }

std::string describe(const SmoothingConfig& config) {
    std::ostringstream out;
    if (const auto* g = std::get_if<GaussianSmoothing>(&config)) {
        out << "gaussian(sigma=" << g->sigma << ")";
    } else {
        const auto& gs = std::get<GravitationalSmoothing>(config);
        out << "gravitational(G=" << gs.gravity << ",omega_c=" << gs.tonal_weight << ",t=" << gs.iterations
            << ",w=" << gs.window_radius << ")";
    }
    return out.str();
}

std::vector<double> gaussian_kernel(double sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw std::invalid_argument("gaussian_kernel: sigma must be positive");
    }
    const int half = static_cast<int>(std::ceil(3.0 * sigma));
    std::vector<double> taps(static_cast<std::size_t>(2 * half + 1));
    double sum = 0.0;
    for (int i = -half; i <= half; ++i) {
        const double v = std::exp(-0.5 * (i * i) / (sigma * sigma));
        taps[static_cast<std::size_t>(i + half)] = v;
        sum += v;
    }
    for (double& v : taps) {
        v /= sum;
    }
    return taps;
}

GrayImage gaussian_smooth(const GrayImage& img, double sigma) {
    const auto taps = gaussian_kernel(sigma);
    const int half = static_cast<int>(taps.size() / 2);
    const int rows = img.rows();
    const int cols = img.cols();

    Grid<double> horizontal(rows, cols);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            double acc = 0.0;
            for (int k = -half; k <= half; ++k) {
                acc += taps[static_cast<std::size_t>(k + half)] * img.clamped(r, c + k);
            }
            horizontal(r, c) = acc;
        }
    }
    GrayImage out(rows, cols);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            double acc = 0.0;
            for (int k = -half; k <= half; ++k) {
                acc += taps[static_cast<std::size_t>(k + half)] * horizontal.clamped(r + k, c);
            }
            out(r, c) = std::clamp(acc, 0.0, 1.0);
        }
    }
    return out;
}

GrayImage gravitational_smooth(const GrayImage& img, const GravitationalSmoothing& config) {
    validate(config);
    const int rows = img.rows();
    const int cols = img.cols();
    const int w = config.window_radius;
    const double g = config.gravity;
    const double omega = config.tonal_weight;

    GrayImage current = img;
    GrayImage next(rows, cols);
    for (int it = 0; it < config.iterations; ++it) {
        for (int r = 0; r < rows; ++r) {
            for (int c = 0; c < cols; ++c) {
                const double zi = omega * current(r, c);
                double tonal_force = 0.0;
                const int r0 = std::max(0, r - w);
                const int r1 = std::min(rows - 1, r + w);
                const int c0 = std::max(0, c - w);
                const int c1 = std::min(cols - 1, c + w);
                for (int rj = r0; rj <= r1; ++rj) {
                    for (int cj = c0; cj <= c1; ++cj) {
                        if (rj == r && cj == c) {
                            continue;
                        }
                        const double dr = static_cast<double>(rj - r);
                        const double dc = static_cast<double>(cj - c);
                        const double dz = omega * current(rj, cj) - zi;
                        const double dist2 = dr * dr + dc * dc + dz * dz;
                        if (dist2 == 0.0) {
                            continue;
                        }
                        // G * m_i * m_j / |r|^2 * (r_z / |r|) with unit masses.
                        tonal_force += g * dz / (dist2 * std::sqrt(dist2));
                    }
                }
                // Euler step on z = omega * I, expressed in intensity units.
                next(r, c) = std::clamp(current(r, c) + tonal_force / omega, 0.0, 1.0);
            }
        }
        std::swap(current, next);
    }
    return current;
}

GrayImage condition(const GrayImage& img, const SmoothingConfig& config) {
    validate(config);
    if (const auto* g = std::get_if<GaussianSmoothing>(&config)) {
        return gaussian_smooth(img, g->sigma);
    }
    return gravitational_smooth(img, std::get<GravitationalSmoothing>(config));
}

}  // namespace edgefuse
