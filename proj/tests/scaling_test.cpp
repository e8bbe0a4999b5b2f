#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "edgefuse/scaling.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace edgefuse;
using namespace edgefuse::testing;

namespace {

constexpr double kPi = std::numbers::pi;

// Neighbour step along the quantized normal, chosen as the grid direction whose
// angle is closest to theta modulo pi.
std::pair<int, int> normal_step(double theta) {
    const std::array<std::pair<int, int>, 4> steps{{{0, 1}, {1, 1}, {1, 0}, {1, -1}}};
    int best = 0;
    double best_gap = 10.0;
    for (int k = 0; k < 4; ++k) {
        double gap = std::fmod(std::abs(theta - k * kPi / 4.0), kPi);
        gap = std::min(gap, kPi - gap);
        if (gap < best_gap) {
            best_gap = gap;
            best = k;
        }
    }
    return steps[static_cast<std::size_t>(best)];
}

GrayImage brute_nms(const GrayImage& x, const OrientationField& theta) {
    GrayImage out(x.rows(), x.cols());
    for (int r = 0; r < x.rows(); ++r) {
        for (int c = 0; c < x.cols(); ++c) {
            const auto [dr, dc] = normal_step(theta(r, c));
            const double a = x.clamped(r + dr, c + dc);
            const double b = x.clamped(r - dr, c - dc);
            out(r, c) = x(r, c) >= a && x(r, c) >= b ? x(r, c) : 0.0;
        }
    }
    return out;
}

bool subset(const EdgeMap& a, const EdgeMap& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a.pixels()[i] && !b.pixels()[i]) {
            return false;
        }
    }
    return true;
}

}  // namespace

TEST(HysteresisParams, ValidatesOrdering) {
    EXPECT_THROW(HysteresisParams(0.6, 0.5), std::invalid_argument);
    EXPECT_THROW(HysteresisParams(-0.1, 0.5), std::invalid_argument);
    EXPECT_THROW(HysteresisParams(0.1, 1.5), std::invalid_argument);
    EXPECT_NO_THROW(HysteresisParams(0.5, 0.5));
    const auto d = HysteresisParams::defaults();
    EXPECT_EQ(d.low(), 0.4);
    EXPECT_EQ(d.high(), 0.95);
    EXPECT_EQ(d.mode(), ThresholdMode::percentile);
}

TEST(Orientation, VerticalStepIsHorizontalNormal) {
    const GrayImage img = edgefuse::testing::step_image(9, 9, 4);
    const OrientationField o = estimate_orientation(img);
    for (int r = 0; r < 9; ++r) {
        EXPECT_NEAR(o(r, 4), 0.0, 1e-12);
        EXPECT_NEAR(o(r, 5), 0.0, 1e-12);
    }
}

TEST(Orientation, HorizontalStepIsVerticalNormal) {
    const OrientationField o = estimate_orientation(edgefuse::testing::step_image(9, 9, 4).transposed());
    for (int c = 0; c < 9; ++c) {
        EXPECT_NEAR(o(4, c), kPi / 2.0, 1e-12);
    }
}

TEST(Orientation, DiagonalRamp) {
    GrayImage img(10, 10);
    for (int r = 0; r < 10; ++r) {
        for (int c = 0; c < 10; ++c) {
            img(r, c) = 0.05 * (r + c);
        }
    }
    const OrientationField o = estimate_orientation(img);
    for (int r = 1; r < 9; ++r) {
        for (int c = 1; c < 9; ++c) {
            ASSERT_NEAR(o(r, c), kPi / 4.0, 1e-6);
        }
    }
}

TEST(Orientation, RangeIsHalfOpen) {
    Rng rng(41);
    const OrientationField o = estimate_orientation(edgefuse::testing::random_image(rng, 20, 20));
    for (double a : o.pixels()) {
        ASSERT_GE(a, 0.0);
        ASSERT_LT(a, kPi);
    }
}

TEST(Orientation, SectorQuantization) {
    EXPECT_EQ(orientation_sector(0.0), 0);
    EXPECT_EQ(orientation_sector(0.3), 0);
    EXPECT_EQ(orientation_sector(kPi / 4), 1);
    EXPECT_EQ(orientation_sector(kPi / 2 + 0.2), 2);
    EXPECT_EQ(orientation_sector(3 * kPi / 4), 3);
    EXPECT_EQ(orientation_sector(kPi - 0.1), 0);
}

TEST(Nms, SingleColumnRidgeRetained) {
    GrayImage x(7, 7);
    for (int r = 0; r < 7; ++r) {
        x(r, 3) = 0.9;
    }
    const OrientationField horizontal(7, 7, 0.0);
    const GrayImage out = nms(x, horizontal);
    EXPECT_EQ(out, brute_nms(x, horizontal));
    for (int r = 0; r < 7; ++r) {
        EXPECT_EQ(out(r, 3), 0.9);
    }
}

TEST(Nms, AdjacentColumnsKeepTheStronger) {
    GrayImage x(7, 7);
    for (int r = 0; r < 7; ++r) {
        x(r, 3) = 0.9;
        x(r, 4) = 0.8;
    }
    const OrientationField horizontal(7, 7, 0.0);
    const GrayImage out = nms(x, horizontal);
    EXPECT_EQ(out, brute_nms(x, horizontal));
    for (int r = 0; r < 7; ++r) {
        EXPECT_EQ(out(r, 3), 0.9);
        EXPECT_EQ(out(r, 4), 0.0);
    }
}

TEST(Nms, PlateauIsKept) {
    const GrayImage x(5, 5, 0.5);
    EXPECT_EQ(nms(x, OrientationField(5, 5, 1.0)), x);
}

TEST(Nms, MatchesBruteForceOnRandomInputs) {
    Rng rng(42);
    for (int trial = 0; trial < 200; ++trial) {
        const GrayImage x = edgefuse::testing::random_image(rng, 11, 9);
        OrientationField theta(11, 9);
        for (double& a : theta.pixels()) {
            a = edgefuse::testing::uniform(rng, 0.0, kPi);
        }
        const GrayImage out = nms(x, theta);
        ASSERT_EQ(out, brute_nms(x, theta));
        for (std::size_t i = 0; i < x.size(); ++i) {
            ASSERT_LE(out.pixels()[i], x.pixels()[i]);
        }
        ASSERT_EQ(nms(out, theta), out);
    }
}

TEST(Nms, DimensionMismatchThrows) {
    EXPECT_THROW((void)nms(GrayImage(3, 3), OrientationField(3, 4)), std::invalid_argument);
}

TEST(Hysteresis, AllBelowLowIsEmpty) {
    const EdgeMap e = hysteresis(GrayImage(5, 5, 0.2), HysteresisParams(0.3, 0.8));
    EXPECT_EQ(count_edges(e), 0u);
}

TEST(Hysteresis, AllAboveHighIsFull) {
    const EdgeMap e = hysteresis(GrayImage(5, 5, 0.9), HysteresisParams(0.3, 0.8));
    EXPECT_EQ(count_edges(e), 25u);
}

TEST(Hysteresis, WeakChainFollowsSeed) {
    GrayImage x(5, 5);
    x(0, 0) = 0.9;
    x(1, 1) = 0.4;
    x(2, 2) = 0.4;
    x(4, 0) = 0.4;
    const EdgeMap e = hysteresis(x, HysteresisParams(0.3, 0.8));
    EXPECT_EQ(e(0, 0), 1);
    EXPECT_EQ(e(1, 1), 1);
    EXPECT_EQ(e(2, 2), 1);
    EXPECT_EQ(e(4, 0), 0);
    EXPECT_EQ(count_edges(e), 3u);
    EXPECT_EQ(e, components_oracle(x, 0.3, 0.8));
}

TEST(Hysteresis, MatchesComponentsOracle) {
    Rng rng(43);
    for (int trial = 0; trial < 300; ++trial) {
        const GrayImage x = sparse_image(rng, 32, 32);
        const double high = edgefuse::testing::uniform(rng, 0.3, 1.0);
        const double low = edgefuse::testing::uniform(rng, 0.0, high);
        ASSERT_EQ(hysteresis(x, HysteresisParams(low, high)), components_oracle(x, low, high));
    }
}

TEST(Hysteresis, MonotoneInThresholds) {
    Rng rng(44);
    for (int trial = 0; trial < 200; ++trial) {
        const GrayImage x = sparse_image(rng, 24, 24);
        const double high = edgefuse::testing::uniform(rng, 0.3, 1.0);
        const double low = edgefuse::testing::uniform(rng, 0.0, high);
        const EdgeMap base = hysteresis(x, HysteresisParams(low, high));
        ASSERT_TRUE(subset(base, hysteresis(x, HysteresisParams(low * 0.5, high))));
        ASSERT_TRUE(subset(base, hysteresis(x, HysteresisParams(low, (low + high) / 2))));
        for (double level : {0.6, 0.8, 0.95}) {
            const EdgeMap strict = hysteresis(x, HysteresisParams(0.4, level, ThresholdMode::percentile));
            const EdgeMap lax = hysteresis(x, HysteresisParams(0.4, level - 0.1, ThresholdMode::percentile));
            ASSERT_TRUE(subset(strict, lax));
        }
    }
}

TEST(PercentileThresholds, InterpolatedQuantileOfNonzeroResponses) {
    GrayImage x(1, 13);
    for (int i = 0; i < 10; ++i) {
        x(0, i) = (i + 1) / 10.0;
    }
    const auto [low, high] = resolve_thresholds(x, HysteresisParams(0.4, 0.5, ThresholdMode::percentile));
    EXPECT_NEAR(high, 0.55, 1e-15);
    EXPECT_NEAR(low, 0.22, 1e-15);
    const auto [lo_abs, hi_abs] = resolve_thresholds(x, HysteresisParams(0.2, 0.7));
    EXPECT_EQ(lo_abs, 0.2);
    EXPECT_EQ(hi_abs, 0.7);
}

TEST(PercentileThresholds, NoResponsesGiveEmptyMap) {
    const GrayImage zeros(6, 6);
    const auto [low, high] = resolve_thresholds(zeros, HysteresisParams::defaults());
    EXPECT_EQ(high, std::numeric_limits<double>::infinity());
    EXPECT_EQ(low, std::numeric_limits<double>::infinity());
    EXPECT_EQ(count_edges(hysteresis(zeros, HysteresisParams::defaults())), 0u);
}
