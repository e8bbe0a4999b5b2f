#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "edgefuse/image.hpp"

namespace edgefuse {

struct PixelPair {
    int candidate_row;
    int candidate_col;
    int truth_row;
    int truth_col;
};

/// Confusion counts from a one-to-one displacement-tolerant correspondence.
/// TP + FP = candidate edge count, TP + FN = ground-truth edge count.
struct MatchResult {
    std::size_t true_positives = 0;
    std::size_t false_positives = 0;
    std::size_t false_negatives = 0;
    std::vector<PixelPair> pairs;
};

/// Maximum-cardinality one-to-one matching between candidate and ground-truth
/// edge pixels, pairing only pixels within `tolerance` (Euclidean, in pixels).
/// Throws std::invalid_argument on shape mismatch or non-positive tolerance.
[[nodiscard]] MatchResult match_edges(const EdgeMap& candidate, const EdgeMap& truth, double tolerance);

/// 2.5% of the image diagonal, unrounded. Throws std::invalid_argument for non-positive sizes.
[[nodiscard]] double tolerance_radius(long rows, long cols);

/// F_alpha = P R / (alpha P + (1 - alpha) R), 0 when P = R = 0.
[[nodiscard]] double f_measure(double precision, double recall, double alpha = 0.5);

struct EvalTriplet {
    double precision = 0.0;
    double recall = 0.0;
    double f = 0.0;
    double alpha = 0.5;
};

/// Precision is 0 without candidate pixels, recall 0 without ground-truth pixels.
[[nodiscard]] EvalTriplet score(const MatchResult& match, double alpha = 0.5);

/// Scores against every ground truth and keeps the triplet with the greatest F.
/// Tolerance defaults to tolerance_radius() of the image. Throws on an empty list.
[[nodiscard]] EvalTriplet evaluate_image(const EdgeMap& candidate, std::span<const EdgeMap> truths,
                                         double alpha = 0.5, std::optional<double> tolerance = std::nullopt);

/// Componentwise arithmetic mean (mean of F, not F of the means). Throws on empty input.
[[nodiscard]] EvalTriplet evaluate_dataset(std::span<const EvalTriplet> per_image);

}  // namespace edgefuse
