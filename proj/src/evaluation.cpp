#include "edgefuse/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <stdexcept>

namespace edgefuse {

namespace {

constexpr int kUnmatched = -1;

struct Offset {
    int dr;
    int dc;
    long d2;
};

// Offsets inside the tolerance disc, nearest first.
std::vector<Offset> disc_offsets(double tolerance) {
    const int reach = static_cast<int>(std::floor(tolerance));
    const double limit = tolerance * tolerance;
    std::vector<Offset> out;
    for (int dr = -reach; dr <= reach; ++dr) {
        for (int dc = -reach; dc <= reach; ++dc) {
            const long d2 = static_cast<long>(dr) * dr + static_cast<long>(dc) * dc;
            if (static_cast<double>(d2) <= limit) {
                out.push_back({dr, dc, d2});
            }
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const Offset& a, const Offset& b) { return a.d2 < b.d2; });
    return out;
}

// Hopcroft-Karp on an explicit bipartite adjacency (left = candidates, right = truth pixels).
class BipartiteMatcher {
public:
    BipartiteMatcher(const std::vector<std::vector<int>>& adjacency, std::size_t right_count)
        : adj_(adjacency),
          match_left_(adjacency.size(), kUnmatched),
          match_right_(right_count, kUnmatched),
          dist_(adjacency.size()),
          cursor_(adjacency.size()),
          via_(adjacency.size()) {}

    void solve() {
        greedy_seed();
        while (layer()) {
            std::fill(cursor_.begin(), cursor_.end(), 0);
            for (std::size_t u = 0; u < adj_.size(); ++u) {
                if (match_left_[u] == kUnmatched && dist_[u] == 0) {
                    augment_from(static_cast<int>(u));
                }
            }
        }
    }

    [[nodiscard]] const std::vector<int>& match_left() const noexcept { return match_left_; }

private:
    static constexpr int kInf = std::numeric_limits<int>::max();

    void greedy_seed() {
        for (std::size_t u = 0; u < adj_.size(); ++u) {
            for (int v : adj_[u]) {
                if (match_right_[static_cast<std::size_t>(v)] == kUnmatched) {
                    match_left_[u] = v;
                    match_right_[static_cast<std::size_t>(v)] = static_cast<int>(u);
                    break;
                }
            }
        }
    }

    bool layer() {
        std::deque<int> queue;
        for (std::size_t u = 0; u < adj_.size(); ++u) {
            if (match_left_[u] == kUnmatched) {
                dist_[u] = 0;
                queue.push_back(static_cast<int>(u));
            } else {
                dist_[u] = kInf;
            }
        }
        bool reachable_free = false;
        while (!queue.empty()) {
            const int u = queue.front();
            queue.pop_front();
            for (int v : adj_[static_cast<std::size_t>(u)]) {
                const int w = match_right_[static_cast<std::size_t>(v)];
                if (w == kUnmatched) {
                    reachable_free = true;
                } else if (dist_[static_cast<std::size_t>(w)] == kInf) {
                    dist_[static_cast<std::size_t>(w)] = dist_[static_cast<std::size_t>(u)] + 1;
                    queue.push_back(w);
                }
            }
        }
        return reachable_free;
    }

    // Iterative layered DFS; paths can be thousands of vertices long on large maps.
    void augment_from(int root) {
        std::vector<int> stack{root};
        while (!stack.empty()) {
            const auto x = static_cast<std::size_t>(stack.back());
            if (cursor_[x] == adj_[x].size()) {
                dist_[x] = kInf;
                stack.pop_back();
                continue;
            }
            const int v = adj_[x][cursor_[x]++];
            const int w = match_right_[static_cast<std::size_t>(v)];
            if (w == kUnmatched) {
                via_[x] = v;
                for (int y : stack) {
                    const int target = via_[static_cast<std::size_t>(y)];
                    match_left_[static_cast<std::size_t>(y)] = target;
                    match_right_[static_cast<std::size_t>(target)] = y;
                }
                return;
            }
            if (dist_[static_cast<std::size_t>(w)] == dist_[x] + 1) {
                via_[x] = v;
                stack.push_back(w);
            }
        }
    }

    const std::vector<std::vector<int>>& adj_;
    std::vector<int> match_left_;
    std::vector<int> match_right_;
    std::vector<int> dist_;
    std::vector<std::size_t> cursor_;
    std::vector<int> via_;
};

}  // namespace

MatchResult match_edges(const EdgeMap& candidate, const EdgeMap& truth, double tolerance) {
    if (!candidate.same_shape(truth)) {
        throw std::invalid_argument("match_edges: candidate and ground truth dimensions differ");
    }
    if (!(tolerance > 0.0) || !std::isfinite(tolerance)) {
        throw std::invalid_argument("match_edges: tolerance must be positive");
    }
    const int rows = truth.rows();
    const int cols = truth.cols();

    Grid<int> truth_index(rows, cols, kUnmatched);
    std::vector<std::pair<int, int>> truth_pixels;
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            if (truth(r, c) != 0) {
                truth_index(r, c) = static_cast<int>(truth_pixels.size());
                truth_pixels.emplace_back(r, c);
            }
        }
    }

    const auto offsets = disc_offsets(tolerance);
    std::vector<std::pair<int, int>> candidate_pixels;
    std::vector<std::vector<int>> adjacency;
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            if (candidate(r, c) == 0) {
                continue;
            }
            candidate_pixels.emplace_back(r, c);
            auto& neighbours = adjacency.emplace_back();
            for (const auto& o : offsets) {
                const int rr = r + o.dr;
                const int cc = c + o.dc;
                if (truth_index.contains(rr, cc) && truth_index(rr, cc) != kUnmatched) {
                    neighbours.push_back(truth_index(rr, cc));
                }
            }
        }
    }

    BipartiteMatcher matcher(adjacency, truth_pixels.size());
    matcher.solve();

    MatchResult result;
    const auto& match = matcher.match_left();
    for (std::size_t u = 0; u < match.size(); ++u) {
        if (match[u] == kUnmatched) {
            continue;
        }
        const auto [gr, gc] = truth_pixels[static_cast<std::size_t>(match[u])];
        result.pairs.push_back({candidate_pixels[u].first, candidate_pixels[u].second, gr, gc});
    }
    result.true_positives = result.pairs.size();
    result.false_positives = candidate_pixels.size() - result.true_positives;
    result.false_negatives = truth_pixels.size() - result.true_positives;
    return result;
}

double tolerance_radius(long rows, long cols) {
    if (rows <= 0 || cols <= 0) {
        throw std::invalid_argument("tolerance_radius: dimensions must be positive");
    }
    const auto r = static_cast<double>(rows);
    const auto c = static_cast<double>(cols);
    return 0.025 * std::sqrt(r * r + c * c);
}

double f_measure(double precision, double recall, double alpha) {
    if (precision == 0.0 && recall == 0.0) {
        return 0.0;
    }
    return precision * recall / (alpha * precision + (1.0 - alpha) * recall);
}

EvalTriplet score(const MatchResult& match, double alpha) {
    const auto tp = static_cast<double>(match.true_positives);
    const std::size_t predicted = match.true_positives + match.false_positives;
    const std::size_t actual = match.true_positives + match.false_negatives;
    EvalTriplet t;
    t.alpha = alpha;
    t.precision = predicted == 0 ? 0.0 : tp / static_cast<double>(predicted);
    t.recall = actual == 0 ? 0.0 : tp / static_cast<double>(actual);
    t.f = f_measure(t.precision, t.recall, alpha);
    return t;
}

EvalTriplet evaluate_image(const EdgeMap& candidate, std::span<const EdgeMap> truths, double alpha,
                           std::optional<double> tolerance) {
    if (truths.empty()) {
        throw std::invalid_argument("evaluate_image: at least one ground truth is required");
    }
    const double radius = tolerance.value_or(tolerance_radius(candidate.rows(), candidate.cols()));
    EvalTriplet best;
    bool first = true;
    for (const auto& truth : truths) {
        const EvalTriplet t = score(match_edges(candidate, truth, radius), alpha);
        if (first || t.f > best.f) {
            best = t;
            first = false;
        }
    }
    return best;
}

EvalTriplet evaluate_dataset(std::span<const EvalTriplet> per_image) {
    if (per_image.empty()) {
        throw std::invalid_argument("evaluate_dataset: no per-image results");
    }
    EvalTriplet mean;
    mean.alpha = per_image.front().alpha;
    for (const auto& t : per_image) {
        mean.precision += t.precision;
        mean.recall += t.recall;
        mean.f += t.f;
    }
    const auto n = static_cast<double>(per_image.size());
    mean.precision /= n;
    mean.recall /= n;
    mean.f /= n;
    return mean;
}

}  // namespace edgefuse
