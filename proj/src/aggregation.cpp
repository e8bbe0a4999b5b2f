#include "edgefuse/aggregation.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace edgefuse {

CardinalityMeasure::CardinalityMeasure(std::vector<double> values, std::optional<double> exponent)
    : values_(std::move(values)), exponent_(exponent) {
    if (values_.size() < 2) {
        throw std::invalid_argument("CardinalityMeasure: need at least one aggregated input");
    }
    if (values_.front() != 0.0 || values_.back() != 1.0) {
        throw std::invalid_argument("CardinalityMeasure: boundary conditions m[0]=0, m[n]=1 violated");
    }
    for (std::size_t k = 0; k + 1 < values_.size(); ++k) {
        if (!(values_[k] <= values_[k + 1])) {
            throw std::invalid_argument("CardinalityMeasure: measure must be non-decreasing in cardinality");
        }
    }
}

CardinalityMeasure power_measure(double q, int n) {
    if (!(q > 0.0) || !std::isfinite(q)) {
        throw std::domain_error("power_measure: exponent q must be a positive real");
    }
    if (n < 1) {
        throw std::domain_error("power_measure: arity n must be at least 1");
    }
    std::vector<double> m(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) {
        m[static_cast<std::size_t>(k)] = std::pow(static_cast<double>(k) / n, q);
    }
    return CardinalityMeasure(std::move(m), q);
}

FusionFunction::FusionFunction(std::string id, Fn fn, FusionProperties props,
                               std::optional<Direction2> increasing_direction)
    : id_(std::move(id)), fn_(std::move(fn)), props_(props), direction_(increasing_direction) {}

SortedInput::SortedInput(std::span<const double> ascending) : values_(ascending) {
    for (std::size_t i = 0; i < values_.size(); ++i) {
        const double v = values_[i];
        if (!(v >= 0.0 && v <= 1.0)) {
            throw std::invalid_argument("SortedInput: value outside [0,1]");
        }
        if (i > 0 && values_[i - 1] > v) {
            throw std::invalid_argument("SortedInput: values not in ascending order");
        }
    }
}

std::vector<double> sorted_copy(std::span<const double> raw) {
    std::vector<double> out(raw.begin(), raw.end());
    std::stable_sort(out.begin(), out.end());
    return out;
}

namespace {

void require_arity(const SortedInput& x, const CardinalityMeasure& m) {
    if (static_cast<int>(x.size()) != m.arity()) {
        throw std::invalid_argument("integral: input length does not match measure arity");
    }
}

// sum_i combine(x_(i) - x_(i-1), m[n-i+1]); ties produce zero differences.
template <typename Combine>
double telescoping_sum(const SortedInput& x, const CardinalityMeasure& m, Combine&& combine) {
    const int n = m.arity();
    double sum = 0.0;
    double previous = 0.0;
    for (int i = 0; i < n; ++i) {
        const double current = x[static_cast<std::size_t>(i)];
        sum += combine(current - previous, m[n - i]);
        previous = current;
    }
    return sum;
}

}  // namespace

double choquet(SortedInput x, const CardinalityMeasure& m) {
    require_arity(x, m);
    return telescoping_sum(x, m, [](double diff, double weight) { return diff * weight; });
}

double choquet(std::span<const double> raw, const CardinalityMeasure& m) {
    const auto sorted = sorted_copy(raw);
    return choquet(SortedInput(sorted), m);
}

double ct_integral(SortedInput x, const CardinalityMeasure& m, const FusionFunction& tnorm) {
    if (!tnorm.properties().tnorm) {
        throw std::invalid_argument("ct_integral: '" + tnorm.id() + "' is not a t-norm");
    }
    require_arity(x, m);
    return telescoping_sum(x, m, tnorm);
}

double ct_integral(std::span<const double> raw, const CardinalityMeasure& m, const FusionFunction& tnorm) {
    const auto sorted = sorted_copy(raw);
    return ct_integral(SortedInput(sorted), m, tnorm);
}

double cf_integral(SortedInput x, const CardinalityMeasure& m, const FusionFunction& f) {
    require_arity(x, m);
    return std::min(1.0, telescoping_sum(x, m, f));
}

double cf_integral(std::span<const double> raw, const CardinalityMeasure& m, const FusionFunction& f) {
    const auto sorted = sorted_copy(raw);
    return cf_integral(SortedInput(sorted), m, f);
}

// --- Base functions -------------------------------------------------------

namespace {

constexpr FusionProperties kConjunctive{.left_absorbing = true, .right_neutral = true, .left_conjunctive = true};
constexpr FusionProperties kTnorm{
    .left_absorbing = true, .right_neutral = true, .left_conjunctive = true, .tnorm = true};
constexpr FusionProperties kTconorm{.tconorm = true};
constexpr Direction2 kFirstArgument{1.0, 0.0};
constexpr Direction2 kDiagonal{1.0, 1.0};

}  // namespace

FusionFunction copula_cf() {
    return FusionFunction(
        "copula_cf", [](double x, double y) { return x * y + x * x * y * (1.0 - x) * (1.0 - y); }, kConjunctive,
        kFirstArgument);
}

FusionFunction overlap_ob() {
    return FusionFunction(
        "overlap_ob", [](double x, double y) { return std::min(x * std::sqrt(y), y * std::sqrt(x)); }, kConjunctive,
        kFirstArgument);
}

FusionFunction f_bpc() {
    return FusionFunction("f_bpc", [](double x, double y) { return x * y * y; }, kConjunctive, kFirstArgument);
}

FusionFunction hamacher() {
    return FusionFunction(
        "hamacher",
        [](double x, double y) {
            if (x == 0.0 && y == 0.0) {
                return 0.0;
            }
            return x * y / (x + y - x * y);
        },
        kTnorm, kDiagonal);
}

FusionFunction product_tnorm() {
    return FusionFunction("product", [](double x, double y) { return x * y; }, kTnorm, kDiagonal);
}

FusionFunction minimum_tnorm() {
    return FusionFunction("min", [](double x, double y) { return std::min(x, y); }, kTnorm, kDiagonal);
}

FusionFunction probabilistic_sum() {
    return FusionFunction("prob_sum", [](double x, double y) { return x + y - x * y; }, kTconorm, kDiagonal);
}

FusionFunction maximum_tconorm() {
    return FusionFunction("max", [](double x, double y) { return std::max(x, y); }, kTconorm, kDiagonal);
}

double schweizer_sklar_t(double x, double y, double lambda) noexcept {
    if (lambda == -std::numeric_limits<double>::infinity()) {
        return std::min(x, y);
    }
    if (lambda == 0.0) {
        return x * y;
    }
    if (lambda == std::numeric_limits<double>::infinity()) {
        return (x < 1.0 && y < 1.0) ? 0.0 : std::min(x, y);
    }
    // Neutral element and annihilator handled exactly; the power form loses them to rounding.
    if (x == 1.0) {
        return y;
    }
    if (y == 1.0) {
        return x;
    }
    if (x == 0.0 || y == 0.0) {
        return 0.0;
    }
    const double base = std::max(std::pow(x, lambda) + std::pow(y, lambda) - 1.0, 0.0);
    // Every t-norm is bounded by min; rounding in the power form can overshoot by an ulp.
    return std::min(std::pow(base, 1.0 / lambda), std::min(x, y));
}

double schweizer_sklar_s(double x, double y, double lambda) noexcept {
    // Exact forms where 1 - (1 - v) would round.
    if (x == 0.0) {
        return y;
    }
    if (y == 0.0) {
        return x;
    }
    if (lambda == -std::numeric_limits<double>::infinity()) {
        return std::max(x, y);
    }
    if (lambda == 0.0) {
        return std::max(x + y - x * y, std::max(x, y));
    }
    if (lambda == std::numeric_limits<double>::infinity()) {
        return 1.0;  // drastic sum; both arguments are non-zero here
    }
    return std::max(1.0 - schweizer_sklar_t(1.0 - x, 1.0 - y, lambda), std::max(x, y));
}

namespace {

std::string format_lambda(double lambda) {
    if (std::isinf(lambda)) {
        return lambda > 0 ? "inf" : "-inf";
    }
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), lambda);
    (void)ec;
    return std::string(buf.data(), end);
}

}  // namespace

FusionFunction schweizer_sklar_tnorm(double lambda) {
    if (std::isnan(lambda)) {
        throw std::invalid_argument("schweizer_sklar_tnorm: lambda is NaN");
    }
    return FusionFunction(
        "ss:" + format_lambda(lambda), [lambda](double x, double y) { return schweizer_sklar_t(x, y, lambda); },
        kTnorm, kDiagonal);
}

FusionFunction schweizer_sklar_tconorm(double lambda) {
    if (std::isnan(lambda)) {
        throw std::invalid_argument("schweizer_sklar_tconorm: lambda is NaN");
    }
    return FusionFunction(
        "ss_conorm:" + format_lambda(lambda),
        [lambda](double x, double y) { return schweizer_sklar_s(x, y, lambda); }, kTconorm, kDiagonal);
}

std::vector<FusionFunction> base_functions() {
    return {copula_cf(),         overlap_ob(),      f_bpc(),
            hamacher(),          product_tnorm(),   minimum_tnorm(),
            probabilistic_sum(), maximum_tconorm(), schweizer_sklar_tnorm(-5.0),
            schweizer_sklar_tconorm(-5.0)};
}

std::optional<double> parse_real(std::string_view text) {
    if (!text.empty() && text.front() == '+') {
        text.remove_prefix(1);
    }
    if (text == "inf" || text == "infinity") {
        return std::numeric_limits<double>::infinity();
    }
    if (text == "-inf" || text == "-infinity") {
        return -std::numeric_limits<double>::infinity();
    }
    double value = 0.0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || text.empty() || std::isnan(value)) {
        return std::nullopt;
    }
    return value;
}

FusionFunction fusion_by_id(std::string_view id) {
    if (id == "copula_cf") return copula_cf();
    if (id == "overlap_ob") return overlap_ob();
    if (id == "f_bpc") return f_bpc();
    if (id == "hamacher") return hamacher();
    if (id == "product") return product_tnorm();
    if (id == "min") return minimum_tnorm();
    if (id == "prob_sum") return probabilistic_sum();
    if (id == "max") return maximum_tconorm();

    constexpr std::string_view kSs = "ss:";
    constexpr std::string_view kSsConorm = "ss_conorm:";
    if (id.starts_with(kSsConorm)) {
        if (auto lambda = parse_real(id.substr(kSsConorm.size()))) {
            return schweizer_sklar_tconorm(*lambda);
        }
    } else if (id.starts_with(kSs)) {
        if (auto lambda = parse_real(id.substr(kSs.size()))) {
            return schweizer_sklar_tnorm(*lambda);
        }
    }
    throw std::invalid_argument("unknown fusion function id '" + std::string(id) + "'");
}

// --- Directional monotonicity ---------------------------------------------

MonotonicityReport check_directional_monotonicity(const NaryFunction& f, std::span<const double> r,
                                                  std::size_t samples, std::uint64_t seed, double tolerance) {
    if (r.empty() || std::all_of(r.begin(), r.end(), [](double v) { return v == 0.0; })) {
        throw std::invalid_argument("check_directional_monotonicity: direction must be non-zero");
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const std::size_t n = r.size();
    std::vector<double> x(n);
    std::vector<double> moved(n);

    MonotonicityReport report;
    while (report.trials < samples) {
        // One sample in five snaps coordinates to the faces of the cube.
        const bool snap = unit(rng) < 0.2;
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = unit(rng);
            if (snap && unit(rng) < 0.3) {
                x[i] = unit(rng) < 0.5 ? 0.0 : 1.0;
            }
        }
        double c_max = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) {
            if (r[i] > 0.0) {
                c_max = std::min(c_max, (1.0 - x[i]) / r[i]);
            } else if (r[i] < 0.0) {
                c_max = std::min(c_max, x[i] / -r[i]);
            }
        }
        if (!(c_max > 0.0)) {
            continue;
        }
        const double c = c_max * (1.0 - unit(rng));  // (0, c_max]
        for (std::size_t i = 0; i < n; ++i) {
            moved[i] = std::clamp(x[i] + c * r[i], 0.0, 1.0);
        }
        ++report.trials;
        const double before = f(x);
        const double after = f(moved);
        if (after < before - tolerance) {
            report.passed = false;
            report.point = x;
            report.step = c;
            report.value_before = before;
            report.value_after = after;
            return report;
        }
    }
    return report;
}

MonotonicityReport check_directional_monotonicity(const FusionFunction& f, Direction2 r, std::size_t samples,
                                                  std::uint64_t seed, double tolerance) {
    const NaryFunction wrapped = [&f](std::span<const double> x) { return f(x[0], x[1]); };
    return check_directional_monotonicity(wrapped, r, samples, seed, tolerance);
}

// --- Integral selection ----------------------------------------------------

IntegralChoice IntegralChoice::parse(std::string_view id) {
    if (id == "choquet") {
        return {IntegralKind::choquet, std::string(id), std::nullopt};
    }
    if (id == "copula_cf" || id == "overlap_ob" || id == "f_bpc") {
        return {IntegralKind::cf, std::string(id), fusion_by_id(id)};
    }
    if (id == "hamacher") {
        return {IntegralKind::ct, std::string(id), hamacher()};
    }
    if (id.starts_with("ct:")) {
        auto fn = fusion_by_id(id.substr(3));
        if (!fn.properties().tnorm) {
            throw std::invalid_argument("integral '" + std::string(id) + "': C_T-integral requires a t-norm");
        }
        return {IntegralKind::ct, std::string(id), std::move(fn)};
    }
    if (id.starts_with("cf:")) {
        return {IntegralKind::cf, std::string(id), fusion_by_id(id.substr(3))};
    }
    throw std::invalid_argument("unknown integral id '" + std::string(id) + "'");
}

double IntegralChoice::evaluate(SortedInput x, const CardinalityMeasure& m) const {
    switch (kind_) {
        case IntegralKind::choquet:
            return choquet(x, m);
        case IntegralKind::ct:
            return ct_integral(x, m, *fn_);
        case IntegralKind::cf:
            return cf_integral(x, m, *fn_);
    }
    return 0.0;
}

double IntegralChoice::default_exponent() const noexcept {
    if (id_ == "copula_cf") return 0.8;
    if (id_ == "f_bpc") return 0.4;
    return 1.0;
}

}  // namespace edgefuse
