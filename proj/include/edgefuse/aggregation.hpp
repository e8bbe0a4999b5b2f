#pragma once

// Fuzzy measures, bivariate fusion functions and the Choquet integral together
// with its t-norm (C_T) and fusion-function (C_F) generalizations.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace edgefuse {

/// Fuzzy measure on subsets of {1..n} whose value depends only on cardinality.
/// m[k] is the measure of any k-element subset; m[0] = 0, m[n] = 1, non-decreasing.
class CardinalityMeasure {
public:
    /// Throws std::invalid_argument when the vector violates the measure axioms.
    explicit CardinalityMeasure(std::vector<double> values, std::optional<double> exponent = std::nullopt);

    [[nodiscard]] int arity() const noexcept { return static_cast<int>(values_.size()) - 1; }
    [[nodiscard]] double operator[](int cardinality) const { return values_.at(static_cast<std::size_t>(cardinality)); }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    /// Exponent q when built by power_measure().
    [[nodiscard]] std::optional<double> exponent() const noexcept { return exponent_; }

private:
    std::vector<double> values_;
    std::optional<double> exponent_;
};

/// m[k] = (k/n)^q. Throws std::domain_error for q <= 0 or n < 1.
[[nodiscard]] CardinalityMeasure power_measure(double q, int n);

struct FusionProperties {
    bool left_absorbing = false;    // F(0,y) = 0
    bool right_neutral = false;     // F(x,1) = x
    bool left_conjunctive = false;  // F(x,y) <= x
    bool tnorm = false;
    bool tconorm = false;
};

using Direction2 = std::array<double, 2>;

/// A binary operation on [0,1]^2 with the properties it is declared to satisfy.
class FusionFunction {
public:
    using Fn = std::function<double(double, double)>;

    FusionFunction(std::string id, Fn fn, FusionProperties props,
                   std::optional<Direction2> increasing_direction = std::nullopt);

    double operator()(double x, double y) const { return fn_(x, y); }

    [[nodiscard]] const std::string& id() const noexcept { return id_; }
    [[nodiscard]] const FusionProperties& properties() const noexcept { return props_; }
    [[nodiscard]] const std::optional<Direction2>& increasing_direction() const noexcept { return direction_; }

private:
    std::string id_;
    Fn fn_;
    FusionProperties props_;
    std::optional<Direction2> direction_;
};

/// Non-owning view of aggregation inputs in non-decreasing order, all in [0,1].
/// The implicit x_(0) = 0 is not stored.
class SortedInput {
public:
    /// Throws std::invalid_argument unless the values are ascending and in [0,1].
    explicit SortedInput(std::span<const double> ascending);

    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] double operator[](std::size_t i) const noexcept { return values_[i]; }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }

private:
    std::span<const double> values_;
};

/// Stable ascending copy of raw inputs.
[[nodiscard]] std::vector<double> sorted_copy(std::span<const double> raw);

// Discrete Choquet integral: sum_i (x_(i) - x_(i-1)) * m[n-i+1].
[[nodiscard]] double choquet(SortedInput x, const CardinalityMeasure& m);
[[nodiscard]] double choquet(std::span<const double> raw, const CardinalityMeasure& m);

// C_T-integral: sum_i T(x_(i) - x_(i-1), m[n-i+1]). T must carry the t-norm flag.
[[nodiscard]] double ct_integral(SortedInput x, const CardinalityMeasure& m, const FusionFunction& tnorm);
[[nodiscard]] double ct_integral(std::span<const double> raw, const CardinalityMeasure& m, const FusionFunction& tnorm);

// C_F-integral: min{1, sum_i F(x_(i) - x_(i-1), m[n-i+1])}.
[[nodiscard]] double cf_integral(SortedInput x, const CardinalityMeasure& m, const FusionFunction& f);
[[nodiscard]] double cf_integral(std::span<const double> raw, const CardinalityMeasure& m, const FusionFunction& f);

// --- Base functions -------------------------------------------------------

[[nodiscard]] FusionFunction copula_cf();      // xy + x^2 y (1-x)(1-y)
[[nodiscard]] FusionFunction overlap_ob();     // min{x sqrt(y), y sqrt(x)}
[[nodiscard]] FusionFunction f_bpc();          // x y^2
[[nodiscard]] FusionFunction hamacher();       // xy / (x + y - xy), 0 at (0,0)
[[nodiscard]] FusionFunction product_tnorm();
[[nodiscard]] FusionFunction minimum_tnorm();
[[nodiscard]] FusionFunction probabilistic_sum();
[[nodiscard]] FusionFunction maximum_tconorm();

/// Schweizer-Sklar t-norm. lambda may be +-infinity; 0 and +-inf take the exact
/// product / minimum / drastic branches.
[[nodiscard]] double schweizer_sklar_t(double x, double y, double lambda) noexcept;
/// Dual t-conorm S(x,y) = 1 - T(1-x, 1-y).
[[nodiscard]] double schweizer_sklar_s(double x, double y, double lambda) noexcept;
[[nodiscard]] FusionFunction schweizer_sklar_tnorm(double lambda);
[[nodiscard]] FusionFunction schweizer_sklar_tconorm(double lambda);

/// The bundled catalogue (Schweizer-Sklar represented at lambda = -5).
[[nodiscard]] std::vector<FusionFunction> base_functions();

/// Looks up a catalogue entry by identifier: copula_cf, overlap_ob, f_bpc, hamacher,
/// product, min, prob_sum, max, ss:<lambda>, ss_conorm:<lambda>.
/// Throws std::invalid_argument for unknown identifiers.
[[nodiscard]] FusionFunction fusion_by_id(std::string_view id);

/// Parses a real number, accepting "inf", "+inf" and "-inf".
[[nodiscard]] std::optional<double> parse_real(std::string_view text);

// --- Directional monotonicity ---------------------------------------------

struct MonotonicityReport {
    bool passed = true;
    std::size_t trials = 0;
    // Counterexample, populated on failure.
    std::vector<double> point;
    double step = 0.0;
    double value_before = 0.0;
    double value_after = 0.0;
};

using NaryFunction = std::function<double(std::span<const double>)>;

/// Randomized check that f(x + c r) >= f(x) - tolerance for sampled x in [0,1]^n and
/// c > 0 keeping x + c r inside the cube. Throws std::invalid_argument for r = 0.
[[nodiscard]] MonotonicityReport check_directional_monotonicity(const NaryFunction& f, std::span<const double> r,
                                                                std::size_t samples, std::uint64_t seed = 0x5eed,
                                                                double tolerance = 1e-12);
[[nodiscard]] MonotonicityReport check_directional_monotonicity(const FusionFunction& f, Direction2 r,
                                                                std::size_t samples, std::uint64_t seed = 0x5eed,
                                                                double tolerance = 1e-12);

// --- Integral selection ----------------------------------------------------

enum class IntegralKind { choquet, ct, cf };

/// Which Choquet-type integral to apply, resolved from an identifier:
///   "choquet"                         plain Choquet integral
///   "copula_cf" | "overlap_ob" | "f_bpc"   C_F-integral with that base function
///   "hamacher"                        C_T-integral with the Hamacher product
///   "ct:<fusion-id>" | "cf:<fusion-id>"   explicit form
class IntegralChoice {
public:
    static IntegralChoice parse(std::string_view id);

    [[nodiscard]] double evaluate(SortedInput x, const CardinalityMeasure& m) const;
    [[nodiscard]] IntegralKind kind() const noexcept { return kind_; }
    [[nodiscard]] const std::string& id() const noexcept { return id_; }
    /// Power-measure exponent paired with this integral in the shipped presets
    /// (copula_cf 0.8, overlap_ob 1, f_bpc 0.4, hamacher 1; everything else 1).
    [[nodiscard]] double default_exponent() const noexcept;

private:
    IntegralChoice(IntegralKind kind, std::string id, std::optional<FusionFunction> fn)
        : kind_(kind), id_(std::move(id)), fn_(std::move(fn)) {}

    IntegralKind kind_;
    std::string id_;
    std::optional<FusionFunction> fn_;
};

/// Identifiers of the four shipped blending presets.
inline constexpr std::array<std::string_view, 4> kPresetIntegrals = {"copula_cf", "overlap_ob", "f_bpc", "hamacher"};

}  // namespace edgefuse
