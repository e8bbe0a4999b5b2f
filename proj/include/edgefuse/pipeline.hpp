#pragma once

// Four-stage detector orchestration (conditioning, features, blending, scaling),
// configuration handling and the benchmark driver used by the `edge` tool.

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "edgefuse/aggregation.hpp"
#include "edgefuse/baselines.hpp"
#include "edgefuse/conditioning.hpp"
#include "edgefuse/evaluation.hpp"
#include "edgefuse/features.hpp"
#include "edgefuse/scaling.hpp"

namespace edgefuse {

/// Unknown identifiers, malformed settings or out-of-range parameters.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An input image or ground truth could not be found or decoded.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The output directory or a result file could not be written.
class OutputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ChoquetDetector {
    IntegralChoice integral;
    double q;
};

/// A detector resolved from its identifier:
///   choquet:<integral-id>[:<q>] | canny | grav:sp | grav:sm | fmss
class Method {
public:
    struct Options {
        std::optional<double> q;  // overrides the integral's preset exponent
        double canny_sigma2 = 2.25;
        double fm_lambda = -5.0;
        int fm_radius = 1;
        double fm_weight = 1.0;
    };

    /// Throws ConfigError for unknown identifiers.
    static Method parse(std::string_view id, const Options& options);
    static Method parse(std::string_view id) { return parse(id, Options{}); }

    [[nodiscard]] const std::string& id() const noexcept { return id_; }
    /// Power-measure exponent for Choquet detectors.
    [[nodiscard]] std::optional<double> q() const;
    [[nodiscard]] bool uses_features() const noexcept { return std::holds_alternative<ChoquetDetector>(detector_); }

    /// Blending stage on an already-conditioned image.
    [[nodiscard]] GrayImage blend(const GrayImage& conditioned, FeatureImage* features_out = nullptr) const;

private:
    Method(std::string id, std::variant<ChoquetDetector, BaselineConfig> detector)
        : id_(std::move(id)), detector_(std::move(detector)) {}

    std::string id_;
    std::variant<ChoquetDetector, BaselineConfig> detector_;
};

/// Intermediate results of one detector run.
struct StageOutputs {
    GrayImage conditioned;
    std::optional<FeatureImage> features;
    GrayImage blended;
    OrientationField orientation;
    GrayImage thinned;
    EdgeMap edges;
};

/// Runs every stage. With `smoothing` empty the input is taken as already conditioned.
[[nodiscard]] StageOutputs detect(const GrayImage& input, const std::optional<SmoothingConfig>& smoothing,
                                  const Method& method, const HysteresisParams& thresholds);

/// Orientation and NMS from the conditioned image and blended response.
[[nodiscard]] GrayImage thin_response(const GrayImage& conditioned, const GrayImage& blended);

struct PipelineConfig {
    std::vector<std::string> inputs;  // image files or directories
    std::string ground_truth;         // benchmark only
    std::string output_dir = "out";
    std::string report = "report.csv";

    std::vector<std::string> methods{"choquet:copula_cf"};
    std::vector<std::string> smoothings{"s3"};  // s1..s4 or "custom"
    std::optional<double> q;

    // Parameters of the "custom" smoothing.
    std::string custom_kind = "gaussian";  // gaussian | gravitational
    double sigma = 1.0;
    double gravity = 0.05;
    double omega_c = 20.0;
    int iterations = 30;
    int window = 5;

    double canny_sigma2 = 2.25;
    double fm_lambda = -5.0;
    int fm_radius = 1;
    double fm_weight = 1.0;

    double low = 0.4;
    double high = 0.95;
    ThresholdMode threshold_mode = ThresholdMode::percentile;
    /// Benchmark: high levels tried per image, keeping the best F. Empty means `high` only.
    std::vector<double> sweep{0.5, 0.6, 0.7, 0.8, 0.85, 0.9, 0.95};

    std::set<std::string> dumps{"p4"};  // any of p1, p2, p3, p4
    std::string input_stage = "p0";     // p0: raw input; p1: already conditioned
    int raw_rows = 0;                   // dimensions for headerless .f64 inputs
    int raw_cols = 0;
    std::string image_format = "png";   // png | pnm
    double alpha = 0.5;
    int jobs = 0;                       // 0: hardware concurrency
};

/// Applies one `key = value` setting. Throws ConfigError for unknown keys or bad values.
void apply_setting(PipelineConfig& config, std::string_view key, std::string_view value);
/// Flat key-value file; '#' starts a comment. Throws ConfigError with the line number.
void load_config_file(const std::filesystem::path& path, PipelineConfig& config);
/// Serialized form accepted by load_config_file.
[[nodiscard]] std::string to_config_text(const PipelineConfig& config);

/// Resolves a smoothing name (preset or "custom") against the config.
[[nodiscard]] SmoothingConfig resolve_smoothing(const PipelineConfig& config, std::string_view name);
[[nodiscard]] Method resolve_method(const PipelineConfig& config, std::string_view id);
[[nodiscard]] HysteresisParams threshold_params(const PipelineConfig& config, std::optional<double> high = std::nullopt);

/// Image files named by the inputs (directories expanded, sorted by name).
[[nodiscard]] std::vector<std::filesystem::path> collect_images(const std::vector<std::string>& inputs);

struct RunSummary {
    std::vector<std::filesystem::path> written;
};

/// Processes every input with the first method/smoothing and writes the requested
/// dumps plus resolved_config.txt into output_dir. Deterministic for a fixed config.
RunSummary run_pipeline(const PipelineConfig& config);

struct BenchmarkRow {
    std::string image;
    std::string method;
    std::string smoothing;
    std::optional<double> q;
    EvalTriplet triplet;
};

struct BenchmarkBlock {
    std::string method;
    std::string smoothing;
    std::optional<double> q;
    std::vector<BenchmarkRow> rows;
    EvalTriplet mean;
};

/// Ground-truth files for an image stem: `<stem>.*`, `<stem>_*`, `<stem>-*` in the
/// directory, or any image inside `<dir>/<stem>/`.
[[nodiscard]] std::vector<std::filesystem::path> ground_truth_files(const std::filesystem::path& dir,
                                                                    const std::string& stem);

/// Evaluates every (method, smoothing) combination and writes the CSV report.
/// Throws InputError listing images without ground truth.
std::vector<BenchmarkBlock> run_benchmark(const PipelineConfig& config);

void write_report(const std::filesystem::path& path, const PipelineConfig& config,
                  const std::vector<BenchmarkBlock>& blocks);

}  // namespace edgefuse
