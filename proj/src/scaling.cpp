#include "edgefuse/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace edgefuse {

HysteresisParams::HysteresisParams(double low, double high, ThresholdMode mode) : low_(low), high_(high), mode_(mode) {
    if (!(low >= 0.0 && high <= 1.0)) {
        throw std::invalid_argument("HysteresisParams: thresholds must lie in [0,1]");
    }
    if (!(low <= high)) {
        throw std::invalid_argument("HysteresisParams: low threshold exceeds high threshold");
    }
}

OrientationField estimate_orientation(const GrayImage& img) {
    if (img.rows() < 3 || img.cols() < 3) {
        throw std::invalid_argument("estimate_orientation: image must be at least 3x3");
    }
    OrientationField out(img.rows(), img.cols());
    for (int r = 0; r < img.rows(); ++r) {
        for (int c = 0; c < img.cols(); ++c) {
            const double gx = 0.5 * (img.clamped(r, c + 1) - img.clamped(r, c - 1));
            const double gy = 0.5 * (img.clamped(r + 1, c) - img.clamped(r - 1, c));
            double angle = std::atan2(gy, gx);
            if (angle < 0.0) {
                angle += std::numbers::pi;
            }
            if (angle >= std::numbers::pi) {
                angle -= std::numbers::pi;
            }
            out(r, c) = angle;
        }
    }
    return out;
}

int orientation_sector(double angle) noexcept {
    const long s = std::lround(angle / (std::numbers::pi / 4.0));
    return static_cast<int>(((s % 4) + 4) % 4);
}

GrayImage nms(const GrayImage& response, const OrientationField& orientation) {
    if (!response.same_shape(orientation)) {
        throw std::invalid_argument("nms: response and orientation dimensions differ");
    }
    // (dr, dc) of the forward neighbour along the normal, per sector.
    static constexpr std::array<std::array<int, 2>, 4> kNormal = {{{0, 1}, {1, 1}, {1, 0}, {1, -1}}};
    GrayImage out(response.rows(), response.cols());
    for (int r = 0; r < response.rows(); ++r) {
        for (int c = 0; c < response.cols(); ++c) {
            const auto [dr, dc] = kNormal[static_cast<std::size_t>(orientation_sector(orientation(r, c)))];
            const double v = response(r, c);
            const double ahead = response.clamped(r + dr, c + dc);
            const double behind = response.clamped(r - dr, c - dc);
            out(r, c) = (v >= ahead && v >= behind) ? v : 0.0;
        }
    }
    return out;
}

std::pair<double, double> resolve_thresholds(const GrayImage& thin, const HysteresisParams& params) {
    if (params.mode() == ThresholdMode::absolute) {
        return {params.low(), params.high()};
    }
    std::vector<double> nonzero;
    for (double v : thin.pixels()) {
        if (v > 0.0) {
            nonzero.push_back(v);
        }
    }
    if (nonzero.empty()) {
        // No responses at all: thresholds nothing can reach.
        constexpr double inf = std::numeric_limits<double>::infinity();
        return {inf, inf};
    }
    std::sort(nonzero.begin(), nonzero.end());
    const double pos = params.high() * static_cast<double>(nonzero.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, nonzero.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    const double high = nonzero[lo] + frac * (nonzero[hi] - nonzero[lo]);
    return {params.low() * high, high};
}

EdgeMap hysteresis(const GrayImage& thin, const HysteresisParams& params) {
    const auto [low, high] = resolve_thresholds(thin, params);
    EdgeMap edges(thin.rows(), thin.cols(), 0);
    std::vector<std::pair<int, int>> stack;
    for (int r = 0; r < thin.rows(); ++r) {
        for (int c = 0; c < thin.cols(); ++c) {
            if (thin(r, c) >= high && edges(r, c) == 0) {
                edges(r, c) = 1;
                stack.emplace_back(r, c);
            }
        }
    }
    while (!stack.empty()) {
        const auto [r, c] = stack.back();
        stack.pop_back();
        for (int dr = -1; dr <= 1; ++dr) {
            for (int dc = -1; dc <= 1; ++dc) {
                const int rr = r + dr;
                const int cc = c + dc;
                if (!thin.contains(rr, cc) || edges(rr, cc) != 0 || !(thin(rr, cc) >= low)) {
                    continue;
                }
                edges(rr, cc) = 1;
                stack.emplace_back(rr, cc);
            }
        }
    }
    return edges;
}

}  // namespace edgefuse
