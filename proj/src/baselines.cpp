#include "edgefuse/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "edgefuse/conditioning.hpp"

namespace edgefuse {

double max_weighted_norm(std::span<const std::array<double, 2>> vectors) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    std::vector<double> breaks;
    breaks.reserve(2 * vectors.size());
    for (const auto& v : vectors) {
        if (v[0] == 0.0 && v[1] == 0.0) {
            continue;
        }
        const double phi = std::atan2(v[1], v[0]);
        for (double b : {phi + std::numbers::pi / 2.0, phi - std::numbers::pi / 2.0}) {
            b = std::fmod(b, two_pi);
            breaks.push_back(b < 0.0 ? b + two_pi : b);
        }
    }
    if (breaks.empty()) {
        return 0.0;
    }
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

    // The set of vectors with positive projection is constant on each arc between breakpoints.
    double best = 0.0;
    for (std::size_t i = 0; i < breaks.size(); ++i) {
        const double next = (i + 1 < breaks.size()) ? breaks[i + 1] : breaks.front() + two_pi;
        const double theta = 0.5 * (breaks[i] + next);
        const double ux = std::cos(theta);
        const double uy = std::sin(theta);
        double sx = 0.0;
        double sy = 0.0;
        for (const auto& v : vectors) {
            if (ux * v[0] + uy * v[1] > 0.0) {
                sx += v[0];
                sy += v[1];
            }
        }
        best = std::max(best, std::hypot(sx, sy));
    }
    return best;
}

std::vector<double> gaussian_derivative_kernel(double sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw std::invalid_argument("gaussian_derivative_kernel: sigma must be positive");
    }
    const int half = static_cast<int>(std::ceil(3.0 * sigma));
    std::vector<double> taps(static_cast<std::size_t>(2 * half + 1));
    double second_moment = 0.0;
    for (int i = -half; i <= half; ++i) {
        const double g = std::exp(-0.5 * (i * i) / (sigma * sigma));
        taps[static_cast<std::size_t>(i + half)] = i * g;
        second_moment += static_cast<double>(i) * i * g;
    }
    for (double& v : taps) {
        v /= second_moment;
    }
    return taps;
}

GrayImage gaussian_gradient_blend(const GrayImage& img, double sigma2) {
    const auto smooth = gaussian_kernel(sigma2);
    const auto deriv = gaussian_derivative_kernel(sigma2);
    const int half = static_cast<int>(smooth.size() / 2);
    const int rows = img.rows();
    const int cols = img.cols();

    auto tap = [&](const std::vector<double>& k, int offset) { return k[static_cast<std::size_t>(offset + half)]; };

    // Separable passes: d/dx = deriv along columns then smooth along rows; d/dy the converse.
    Grid<double> dx_rows(rows, cols);
    Grid<double> sm_rows(rows, cols);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            double d = 0.0;
            double s = 0.0;
            for (int k = -half; k <= half; ++k) {
                s += tap(smooth, k) * img.clamped(r, c + k);
            }
            // Opposite taps are paired so flat neighbourhoods give exactly zero.
            for (int k = 1; k <= half; ++k) {
                d += tap(deriv, k) * (img.clamped(r, c + k) - img.clamped(r, c - k));
            }
            dx_rows(r, c) = d;
            sm_rows(r, c) = s;
        }
    }

    std::vector<std::array<double, 2>> support;
    support.reserve(smooth.size() * smooth.size());
    for (int dr = -half; dr <= half; ++dr) {
        for (int dc = -half; dc <= half; ++dc) {
            support.push_back({tap(deriv, dc) * tap(smooth, dr), tap(smooth, dc) * tap(deriv, dr)});
        }
    }
    const double max_norm = max_weighted_norm(support);

    GrayImage out(rows, cols);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            double gx = 0.0;
            double gy = 0.0;
            for (int k = -half; k <= half; ++k) {
                gx += tap(smooth, k) * dx_rows.clamped(r + k, c);
            }
            for (int k = 1; k <= half; ++k) {
                gy += tap(deriv, k) * (sm_rows.clamped(r + k, c) - sm_rows.clamped(r - k, c));
            }
            out(r, c) = std::min(1.0, std::hypot(gx, gy) / max_norm);
        }
    }
    return out;
}

GrayImage canny_blend(const GrayImage& img, double sigma1, double sigma2) {
    return gaussian_gradient_blend(gaussian_smooth(img, sigma1), sigma2);
}

namespace {

struct NeighbourPull {
    int dr;
    int dc;
    double fx;  // unit direction / distance^2, column axis
    double fy;  // row axis
};

std::array<NeighbourPull, 8> neighbour_pulls() {
    std::array<NeighbourPull, 8> out{};
    std::size_t k = 0;
    for (int dr = -1; dr <= 1; ++dr) {
        for (int dc = -1; dc <= 1; ++dc) {
            if (dr == 0 && dc == 0) {
                continue;
            }
            const double d2 = dr * dr + dc * dc;
            const double d3 = d2 * std::sqrt(d2);
            out[k++] = {dr, dc, dc / d3, dr / d3};
        }
    }
    return out;
}

}  // namespace

GrayImage gravitational_edge_blend(const GrayImage& img, const FusionFunction& conorm) {
    if (!conorm.properties().tconorm) {
        throw std::invalid_argument("gravitational_edge_blend: '" + conorm.id() + "' is not a t-conorm");
    }
    static const auto pulls = neighbour_pulls();
    static const double max_norm = [] {
        std::vector<std::array<double, 2>> v;
        for (const auto& p : pulls) {
            v.push_back({p.fx, p.fy});
        }
        return max_weighted_norm(v);
    }();

    GrayImage out(img.rows(), img.cols());
    for (int r = 0; r < img.rows(); ++r) {
        for (int c = 0; c < img.cols(); ++c) {
            const double centre = img(r, c);
            double fx = 0.0;
            double fy = 0.0;
            // pulls[7 - k] is the mirror of pulls[k]; equal masses cancel exactly.
            for (std::size_t k = 0; k < 4; ++k) {
                const auto& p = pulls[k];
                const auto& q = pulls[7 - k];
                const double net = conorm(centre, img.clamped(r + p.dr, c + p.dc)) -
                                   conorm(centre, img.clamped(r + q.dr, c + q.dc));
                fx += net * p.fx;
                fy += net * p.fy;
            }
            out(r, c) = std::min(1.0, std::hypot(fx, fy) / max_norm);
        }
    }
    return out;
}

GrayImage fuzzy_morphology_blend(const GrayImage& img, double lambda, int radius, double off_centre_weight) {
    if (radius < 1) {
        throw std::invalid_argument("fuzzy_morphology_blend: structuring radius must be positive");
    }
    if (!(off_centre_weight >= 0.0 && off_centre_weight <= 1.0)) {
        throw std::invalid_argument("fuzzy_morphology_blend: structuring weights must lie in [0,1]");
    }
    if (std::isnan(lambda)) {
        throw std::invalid_argument("fuzzy_morphology_blend: lambda is NaN");
    }
    GrayImage out(img.rows(), img.cols());
    for (int r = 0; r < img.rows(); ++r) {
        for (int c = 0; c < img.cols(); ++c) {
            double dilation = 0.0;
            double erosion = 1.0;
            for (int dr = -radius; dr <= radius; ++dr) {
                for (int dc = -radius; dc <= radius; ++dc) {
                    const double b = (dr == 0 && dc == 0) ? 1.0 : off_centre_weight;
                    const double a = img.clamped(r + dr, c + dc);
                    dilation = std::max(dilation, schweizer_sklar_t(b, a, lambda));
                    erosion = std::min(erosion, schweizer_sklar_s(1.0 - b, a, lambda));
                }
            }
            out(r, c) = std::clamp(dilation - erosion, 0.0, 1.0);
        }
    }
    return out;
}

GrayImage baseline_blend(const GrayImage& conditioned, const BaselineConfig& config) {
    if (const auto* canny = std::get_if<CannyBaseline>(&config)) {
        return gaussian_gradient_blend(conditioned, canny->sigma2);
    }
    if (const auto* grav = std::get_if<GravitationalBaseline>(&config)) {
        return gravitational_edge_blend(conditioned, fusion_by_id(grav->conorm));
    }
    const auto& fm = std::get<FuzzyMorphologyBaseline>(config);
    return fuzzy_morphology_blend(conditioned, fm.lambda, fm.radius, fm.off_centre_weight);
}

}  // namespace edgefuse
