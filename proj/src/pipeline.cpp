#include "edgefuse/pipeline.hpp"

#include "edgefuse/image_io.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

namespace edgefuse {

namespace fs = std::filesystem;

namespace {

std::string format_real(double v) {
    char buf[32];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return ec == std::errc{} ? std::string(buf, end) : std::string("nan");
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::string unquote(std::string_view s) {
    s = trim(s);
    if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front()) {
        s = s.substr(1, s.size() - 2);
    }
    return std::string(s);
}

std::vector<std::string> split_list(std::string_view s) {
    std::vector<std::string> out;
    while (!s.empty()) {
        const auto comma = s.find(',');
        const auto item = unquote(s.substr(0, comma));
        if (!item.empty()) {
            out.push_back(item);
        }
        if (comma == std::string_view::npos) {
            break;
        }
        s.remove_prefix(comma + 1);
    }
    return out;
}

std::string join(const auto& items, const char* sep = ",") {
    std::string out;
    for (const auto& item : items) {
        if (!out.empty()) {
            out += sep;
        }
        if constexpr (std::is_arithmetic_v<std::decay_t<decltype(item)>>) {
            out += format_real(item);
        } else {
            out += item;
        }
    }
    return out;
}

double require_real(std::string_view key, std::string_view value) {
    const auto v = parse_real(trim(value));
    if (!v || std::isnan(*v)) {
        throw ConfigError("setting '" + std::string(key) + "': not a number: '" + std::string(value) + "'");
    }
    return *v;
}

int require_int(std::string_view key, std::string_view value) {
    value = trim(value);
    int out = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
        throw ConfigError("setting '" + std::string(key) + "': not an integer: '" + std::string(value) + "'");
    }
    return out;
}

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    return out;
}

void check_positive(std::string_view what, double v) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw ConfigError(std::string(what) + " must be a positive finite number");
    }
}

// Runs fn(i) for i in [0, count) on a pool of worker threads. The first
// exception thrown by any task is rethrown after every worker has joined.
template <typename Fn>
void parallel_for(std::size_t count, int jobs, Fn&& fn) {
    std::size_t workers = jobs > 0 ? static_cast<std::size_t>(jobs) : std::thread::hardware_concurrency();
    workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(count, 1));
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&] {
        for (std::size_t i = next++; i < count && !failed; i = next++) {
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                }
                failed = true;
            }
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back(work);
        }
        for (auto& t : pool) {
            t.join();
        }
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

template <typename Fn>
auto reading(const fs::path& path, Fn&& fn) {
    try {
        return fn();
    } catch (const std::exception& e) {
        throw InputError("cannot read '" + path.string() + "': " + e.what());
    }
}

template <typename Fn>
void writing(const fs::path& path, Fn&& fn) {
    try {
        fn();
    } catch (const std::exception& e) {
        throw OutputError("cannot write '" + path.string() + "': " + e.what());
    }
}

void ensure_directory(const fs::path& dir) {
    if (dir.empty()) {
        return;
    }
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
        throw OutputError("cannot create output directory '" + dir.string() + "'" +
                          (ec ? ": " + ec.message() : std::string()));
    }
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    out.close();
    if (!out) {
        throw OutputError("cannot write '" + path.string() + "'");
    }
}

bool is_raw(const fs::path& path) { return lower(path.extension().string()) == ".f64"; }

GrayImage load_input(const PipelineConfig& config, const fs::path& path) {
    if (is_raw(path)) {
        if (config.raw_rows <= 0 || config.raw_cols <= 0) {
            throw ConfigError("raw input '" + path.string() + "' needs raw_size (rows x cols)");
        }
        return reading(path, [&] { return read_raw_gray(path, config.raw_rows, config.raw_cols); });
    }
    return reading(path, [&] { return read_gray_image(path); });
}

const std::vector<std::string> kStages{"p1", "p2", "p3", "p4"};

}  // namespace

Method Method::parse(std::string_view id, const Options& options) {
    const std::string text = lower(trim(id));
    if (text == "canny") {
        check_positive("canny_sigma2", options.canny_sigma2);
        return Method("canny", CannyBaseline{1.0, options.canny_sigma2});
    }
    if (text == "grav:sp") {
        return Method("grav:sp", GravitationalBaseline{"prob_sum"});
    }
    if (text == "grav:sm") {
        return Method("grav:sm", GravitationalBaseline{"max"});
    }
    if (text == "fmss") {
        if (options.fm_radius < 1) {
            throw ConfigError("fm_radius must be at least 1");
        }
        if (!(options.fm_weight >= 0.0 && options.fm_weight <= 1.0)) {
            throw ConfigError("fm_weight must lie in [0,1]");
        }
        if (std::isnan(options.fm_lambda)) {
            throw ConfigError("fm_lambda must be a number");
        }
        return Method("fmss", FuzzyMorphologyBaseline{options.fm_lambda, options.fm_radius, options.fm_weight});
    }

    const std::string_view prefix = "choquet";
    if (text.compare(0, prefix.size(), prefix) != 0 || (text.size() > prefix.size() && text[prefix.size()] != ':')) {
        throw ConfigError("unknown method '" + std::string(id) + "' (expected choquet:<integral>[:<q>], canny, grav:sp, grav:sm or fmss)");
    }
    std::string tail = text.size() > prefix.size() ? text.substr(prefix.size() + 1) : "choquet";

    std::optional<IntegralChoice> integral;
    std::optional<double> q;
    try {
        integral = IntegralChoice::parse(tail);
    } catch (const std::exception&) {
        const auto colon = tail.rfind(':');
        if (colon != std::string::npos) {
            q = parse_real(std::string_view(tail).substr(colon + 1));
            if (q) {
                try {
                    integral = IntegralChoice::parse(std::string_view(tail).substr(0, colon));
                } catch (const std::exception&) {
                }
            }
        }
    }
    if (!integral) {
        throw ConfigError("unknown method '" + std::string(id) + "': '" + tail + "' is not a known integral");
    }
    const double exponent = q ? *q : options.q.value_or(integral->default_exponent());
    check_positive("measure exponent q", exponent);
    return Method("choquet:" + integral->id() + ":" + format_real(exponent), ChoquetDetector{*integral, exponent});
}

std::optional<double> Method::q() const {
    if (const auto* d = std::get_if<ChoquetDetector>(&detector_)) {
        return d->q;
    }
    return std::nullopt;
}

GrayImage Method::blend(const GrayImage& conditioned, FeatureImage* features_out) const {
    if (const auto* d = std::get_if<ChoquetDetector>(&detector_)) {
        FeatureImage features = extract_features(conditioned);
        GrayImage out = edgefuse::blend(features, d->integral, power_measure(d->q, kNeighbourCount));
        if (features_out != nullptr) {
            *features_out = std::move(features);
        }
        return out;
    }
    return baseline_blend(conditioned, std::get<BaselineConfig>(detector_));
}

GrayImage thin_response(const GrayImage& conditioned, const GrayImage& blended) {
    return nms(blended, estimate_orientation(conditioned));
}

StageOutputs detect(const GrayImage& input, const std::optional<SmoothingConfig>& smoothing, const Method& method,
                    const HysteresisParams& thresholds) {
    StageOutputs out;
    out.conditioned = smoothing ? condition(input, *smoothing) : input;
    FeatureImage features;
    out.blended = method.blend(out.conditioned, method.uses_features() ? &features : nullptr);
    if (method.uses_features()) {
        out.features = std::move(features);
    }
    out.orientation = estimate_orientation(out.conditioned);
    out.thinned = nms(out.blended, out.orientation);
    out.edges = hysteresis(out.thinned, thresholds);
    return out;
}

void apply_setting(PipelineConfig& config, std::string_view raw_key, std::string_view raw_value) {
    const std::string key = lower(trim(raw_key));
    const std::string value = unquote(raw_value);

    if (key == "in" || key == "inputs") {
        config.inputs = split_list(value);
    } else if (key == "gt" || key == "ground_truth") {
        config.ground_truth = value;
    } else if (key == "out" || key == "output_dir") {
        config.output_dir = value;
    } else if (key == "report") {
        config.report = value;
    } else if (key == "method" || key == "methods") {
        config.methods = split_list(value);
    } else if (key == "blend") {
        config.methods = {"choquet:" + value};
    } else if (key == "smoothing" || key == "smoothings") {
        config.smoothings = split_list(value);
    } else if (key == "q") {
        if (value.empty()) {
            config.q.reset();
        } else {
            config.q = require_real(key, value);
        }
    } else if (key == "custom_kind") {
        const std::string kind = lower(value);
        if (kind != "gaussian" && kind != "gravitational") {
            throw ConfigError("custom_kind must be 'gaussian' or 'gravitational'");
        }
        config.custom_kind = kind;
    } else if (key == "sigma") {
        config.sigma = require_real(key, value);
    } else if (key == "gravity" || key == "g") {
        config.gravity = require_real(key, value);
    } else if (key == "omega_c") {
        config.omega_c = require_real(key, value);
    } else if (key == "iterations") {
        config.iterations = require_int(key, value);
    } else if (key == "window") {
        config.window = require_int(key, value);
    } else if (key == "canny_sigma2") {
        config.canny_sigma2 = require_real(key, value);
    } else if (key == "fm_lambda") {
        config.fm_lambda = require_real(key, value);
    } else if (key == "fm_radius") {
        config.fm_radius = require_int(key, value);
    } else if (key == "fm_weight") {
        config.fm_weight = require_real(key, value);
    } else if (key == "low") {
        config.low = require_real(key, value);
    } else if (key == "high") {
        config.high = require_real(key, value);
    } else if (key == "threshold_mode") {
        const std::string mode = lower(value);
        if (mode == "absolute") {
            config.threshold_mode = ThresholdMode::absolute;
        } else if (mode == "percentile") {
            config.threshold_mode = ThresholdMode::percentile;
        } else {
            throw ConfigError("threshold_mode must be 'absolute' or 'percentile'");
        }
    } else if (key == "sweep") {
        config.sweep.clear();
        for (const auto& item : split_list(value)) {
            config.sweep.push_back(require_real(key, item));
        }
    } else if (key == "dump" || key == "dumps") {
        config.dumps.clear();
        for (const auto& item : split_list(lower(value))) {
            if (item == "none") {
                continue;
            }
            if (std::find(kStages.begin(), kStages.end(), item) == kStages.end()) {
                throw ConfigError("unknown dump stage '" + item + "' (expected p1, p2, p3, p4 or none)");
            }
            config.dumps.insert(item);
        }
    } else if (key == "input_stage") {
        const std::string stage = lower(value);
        if (stage != "p0" && stage != "p1") {
            throw ConfigError("input_stage must be 'p0' or 'p1'");
        }
        config.input_stage = stage;
    } else if (key == "raw_size") {
        if (value.empty()) {
            config.raw_rows = config.raw_cols = 0;
        } else {
            const auto x = lower(value).find('x');
            if (x == std::string::npos) {
                throw ConfigError("raw_size must look like <rows>x<cols>");
            }
            config.raw_rows = require_int(key, std::string_view(value).substr(0, x));
            config.raw_cols = require_int(key, std::string_view(value).substr(x + 1));
            if (config.raw_rows <= 0 || config.raw_cols <= 0) {
                throw ConfigError("raw_size dimensions must be positive");
            }
        }
    } else if (key == "format" || key == "image_format") {
        const std::string fmt = lower(value);
        if (fmt != "png" && fmt != "pnm") {
            throw ConfigError("format must be 'png' or 'pnm'");
        }
        config.image_format = fmt;
    } else if (key == "alpha") {
        config.alpha = require_real(key, value);
        if (!(config.alpha >= 0.0 && config.alpha <= 1.0)) {
            throw ConfigError("alpha must lie in [0,1]");
        }
    } else if (key == "jobs") {
        config.jobs = require_int(key, value);
        if (config.jobs < 0) {
            throw ConfigError("jobs must be non-negative");
        }
    } else {
        throw ConfigError("unknown setting '" + key + "'");
    }
}

void load_config_file(const fs::path& path, PipelineConfig& config) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot read config file '" + path.string() + "'");
    }
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        std::string_view view(line);
        if (const auto hash = view.find('#'); hash != std::string_view::npos) {
            view = view.substr(0, hash);
        }
        view = trim(view);
        if (view.empty()) {
            continue;
        }
        const auto eq = view.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(path.string() + ":" + std::to_string(number) + ": expected 'key = value'");
        }
        try {
            apply_setting(config, view.substr(0, eq), view.substr(eq + 1));
        } catch (const ConfigError& e) {
            throw ConfigError(path.string() + ":" + std::to_string(number) + ": " + e.what());
        }
    }
}

std::string to_config_text(const PipelineConfig& config) {
    std::ostringstream out;
    out << "in = " << join(config.inputs) << '\n'
        << "gt = " << config.ground_truth << '\n'
        << "out = " << config.output_dir << '\n'
        << "report = " << config.report << '\n'
        << "methods = " << join(config.methods) << '\n'
        << "smoothings = " << join(config.smoothings) << '\n'
        << "q = " << (config.q ? format_real(*config.q) : std::string()) << '\n'
        << "custom_kind = " << config.custom_kind << '\n'
        << "sigma = " << format_real(config.sigma) << '\n'
        << "gravity = " << format_real(config.gravity) << '\n'
        << "omega_c = " << format_real(config.omega_c) << '\n'
        << "iterations = " << config.iterations << '\n'
        << "window = " << config.window << '\n'
        << "canny_sigma2 = " << format_real(config.canny_sigma2) << '\n'
        << "fm_lambda = " << format_real(config.fm_lambda) << '\n'
        << "fm_radius = " << config.fm_radius << '\n'
        << "fm_weight = " << format_real(config.fm_weight) << '\n'
        << "threshold_mode = " << (config.threshold_mode == ThresholdMode::percentile ? "percentile" : "absolute") << '\n'
        << "low = " << format_real(config.low) << '\n'
        << "high = " << format_real(config.high) << '\n'
        << "sweep = " << join(config.sweep) << '\n'
        << "dumps = " << (config.dumps.empty() ? std::string("none") : join(config.dumps)) << '\n'
        << "input_stage = " << config.input_stage << '\n'
        << "raw_size = ";
    if (config.raw_rows > 0 && config.raw_cols > 0) {
        out << config.raw_rows << 'x' << config.raw_cols;
    }
    out << '\n'
        << "format = " << config.image_format << '\n'
        << "alpha = " << format_real(config.alpha) << '\n'
        << "jobs = " << config.jobs << '\n';
    return out.str();
}

SmoothingConfig resolve_smoothing(const PipelineConfig& config, std::string_view name) {
    SmoothingConfig out;
    if (lower(name) == "custom") {
        if (config.custom_kind == "gaussian") {
            out = GaussianSmoothing{config.sigma};
        } else {
            out = GravitationalSmoothing{config.gravity, config.omega_c, config.iterations, config.window};
        }
    } else {
        try {
            out = smoothing_preset(name);
        } catch (const std::invalid_argument&) {
            throw ConfigError("unknown smoothing '" + std::string(name) + "' (expected s1, s2, s3, s4 or custom)");
        }
    }
    try {
        validate(out);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("smoothing '") + std::string(name) + "': " + e.what());
    }
    return out;
}

Method resolve_method(const PipelineConfig& config, std::string_view id) {
    Method::Options options;
    options.q = config.q;
    options.canny_sigma2 = config.canny_sigma2;
    options.fm_lambda = config.fm_lambda;
    options.fm_radius = config.fm_radius;
    options.fm_weight = config.fm_weight;
    return Method::parse(id, options);
}

HysteresisParams threshold_params(const PipelineConfig& config, std::optional<double> high) {
    try {
        return {config.low, high.value_or(config.high), config.threshold_mode};
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("thresholds: ") + e.what());
    }
}

std::vector<fs::path> collect_images(const std::vector<std::string>& inputs) {
    std::vector<fs::path> out;
    for (const auto& input : inputs) {
        const fs::path path(input);
        std::error_code ec;
        if (fs::is_directory(path, ec)) {
            std::vector<fs::path> found;
            for (const auto& entry : fs::directory_iterator(path, ec)) {
                if (entry.is_regular_file() && (is_supported_image(entry.path()) || is_raw(entry.path()))) {
                    found.push_back(entry.path());
                }
            }
            std::sort(found.begin(), found.end());
            out.insert(out.end(), found.begin(), found.end());
        } else if (fs::is_regular_file(path, ec)) {
            out.push_back(path);
        } else {
            throw InputError("input '" + input + "' does not exist");
        }
    }
    if (out.empty()) {
        throw InputError("no input images found");
    }
    return out;
}

RunSummary run_pipeline(const PipelineConfig& config) {
    if (config.methods.empty() || config.smoothings.empty()) {
        throw ConfigError("a method and a smoothing are required");
    }
    const Method method = resolve_method(config, config.methods.front());
    const bool conditioned_input = config.input_stage == "p1";
    std::optional<SmoothingConfig> smoothing;
    if (!conditioned_input) {
        smoothing = resolve_smoothing(config, config.smoothings.front());
    }
    const HysteresisParams thresholds = threshold_params(config);
    const auto images = collect_images(config.inputs);

    const fs::path out_dir(config.output_dir);
    ensure_directory(out_dir);
    const std::string gray_ext = config.image_format == "png" ? ".png" : ".pgm";
    const std::string edge_ext = config.image_format == "png" ? ".png" : ".pbm";

    std::vector<std::vector<fs::path>> written(images.size());
    parallel_for(images.size(), config.jobs, [&](std::size_t i) {
        const GrayImage input = load_input(config, images[i]);
        const StageOutputs stages = detect(input, smoothing, method, thresholds);
        const std::string stem = images[i].stem().string();
        auto& files = written[i];
        auto emit = [&](const fs::path& path, auto&& fn) {
            writing(path, fn);
            files.push_back(path);
        };
        if (config.dumps.count("p1")) {
            emit(out_dir / (stem + "_p1" + gray_ext), [&] { write_gray_image(out_dir / (stem + "_p1" + gray_ext), stages.conditioned); });
            emit(out_dir / (stem + "_p1.f64"), [&] { write_raw_gray(out_dir / (stem + "_p1.f64"), stages.conditioned); });
        }
        if (config.dumps.count("p2") && stages.features) {
            emit(out_dir / (stem + "_p2_features.f64"),
                 [&] { write_feature_raw(out_dir / (stem + "_p2_features.f64"), *stages.features); });
        }
        if (config.dumps.count("p3")) {
            emit(out_dir / (stem + "_p3" + gray_ext), [&] { write_gray_image(out_dir / (stem + "_p3" + gray_ext), stages.blended); });
            emit(out_dir / (stem + "_p3.f64"), [&] { write_raw_gray(out_dir / (stem + "_p3.f64"), stages.blended); });
        }
        if (config.dumps.count("p4")) {
            emit(out_dir / (stem + "_p4" + edge_ext), [&] { write_edge_map(out_dir / (stem + "_p4" + edge_ext), stages.edges); });
        }
    });

    RunSummary summary;
    for (auto& files : written) {
        summary.written.insert(summary.written.end(), files.begin(), files.end());
    }
    const fs::path resolved = out_dir / "resolved_config.txt";
    write_text(resolved, to_config_text(config));
    summary.written.push_back(resolved);
    return summary;
}

std::vector<fs::path> ground_truth_files(const fs::path& dir, const std::string& stem) {
    std::vector<fs::path> out;
    std::error_code ec;
    if (fs::is_directory(dir / stem, ec)) {
        for (const auto& entry : fs::directory_iterator(dir / stem, ec)) {
            if (entry.is_regular_file() && is_supported_image(entry.path())) {
                out.push_back(entry.path());
            }
        }
    }
    for (const auto& entry : fs::directory_iterator(dir, ec)) {
        if (!entry.is_regular_file() || !is_supported_image(entry.path())) {
            continue;
        }
        const std::string name = entry.path().stem().string();
        if (name == stem ||
            (name.size() > stem.size() && name.compare(0, stem.size(), stem) == 0 &&
             (name[stem.size()] == '_' || name[stem.size()] == '-'))) {
            out.push_back(entry.path());
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<BenchmarkBlock> run_benchmark(const PipelineConfig& config) {
    if (config.ground_truth.empty()) {
        throw ConfigError("benchmark requires a ground-truth directory");
    }
    if (!fs::is_directory(config.ground_truth)) {
        throw InputError("ground-truth directory '" + config.ground_truth + "' does not exist");
    }
    if (config.methods.empty() || config.smoothings.empty()) {
        throw ConfigError("at least one method and one smoothing are required");
    }
    std::vector<Method> methods;
    for (const auto& id : config.methods) {
        methods.push_back(resolve_method(config, id));
    }
    std::vector<SmoothingConfig> smoothings;
    for (const auto& name : config.smoothings) {
        smoothings.push_back(resolve_smoothing(config, name));
    }
    std::vector<HysteresisParams> levels;
    if (config.sweep.empty()) {
        levels.push_back(threshold_params(config));
    } else {
        for (double high : config.sweep) {
            levels.push_back(threshold_params(config, high));
        }
    }

    const auto images = collect_images(config.inputs);
    std::vector<std::vector<fs::path>> truth_files;
    std::vector<std::string> missing;
    for (const auto& image : images) {
        truth_files.push_back(ground_truth_files(config.ground_truth, image.stem().string()));
        if (truth_files.back().empty()) {
            missing.push_back(image.filename().string());
        }
    }
    if (!missing.empty()) {
        throw InputError("missing ground truth for: " + join(missing, ", "));
    }

    // results[image][smoothing][method]
    const std::size_t combos = smoothings.size() * methods.size();
    std::vector<std::vector<EvalTriplet>> results(images.size(), std::vector<EvalTriplet>(combos));
    parallel_for(images.size(), config.jobs, [&](std::size_t i) {
        const GrayImage input = load_input(config, images[i]);
        std::vector<EdgeMap> truths;
        for (const auto& path : truth_files[i]) {
            truths.push_back(reading(path, [&] { return read_edge_map(path); }));
            if (!truths.back().same_shape(input)) {
                throw InputError("ground truth '" + path.string() + "' does not match the size of '" +
                                 images[i].string() + "'");
            }
        }
        for (std::size_t s = 0; s < smoothings.size(); ++s) {
            const GrayImage conditioned = condition(input, smoothings[s]);
            const OrientationField orientation = estimate_orientation(conditioned);
            for (std::size_t m = 0; m < methods.size(); ++m) {
                const GrayImage thin = nms(methods[m].blend(conditioned), orientation);
                EvalTriplet best;
                bool first = true;
                for (const auto& level : levels) {
                    const EvalTriplet t = evaluate_image(hysteresis(thin, level), truths, config.alpha);
                    if (first || t.f > best.f) {
                        best = t;
                        first = false;
                    }
                }
                results[i][s * methods.size() + m] = best;
            }
        }
    });

    std::vector<BenchmarkBlock> blocks;
    for (std::size_t m = 0; m < methods.size(); ++m) {
        for (std::size_t s = 0; s < smoothings.size(); ++s) {
            BenchmarkBlock block{methods[m].id(), config.smoothings[s], methods[m].q(), {}, {}};
            std::vector<EvalTriplet> per_image;
            for (std::size_t i = 0; i < images.size(); ++i) {
                const EvalTriplet& t = results[i][s * methods.size() + m];
                block.rows.push_back({images[i].stem().string(), block.method, block.smoothing, block.q, t});
                per_image.push_back(t);
            }
            block.mean = evaluate_dataset(per_image);
            blocks.push_back(std::move(block));
        }
    }

    write_report(config.report, config, blocks);
    return blocks;
}

void write_report(const fs::path& path, const PipelineConfig& config, const std::vector<BenchmarkBlock>& blocks) {
    ensure_directory(path.parent_path());
    std::ostringstream out;
    char buf[64];
    auto triplet = [&](const EvalTriplet& t) {
        std::snprintf(buf, sizeof buf, "%.6f,%.6f,%.6f", t.precision, t.recall, t.f);
        return std::string(buf);
    };
    out << "# threshold_mode=" << (config.threshold_mode == ThresholdMode::percentile ? "percentile" : "absolute")
        << " low=" << format_real(config.low)
        << " high=" << (config.sweep.empty() ? format_real(config.high) : "best of " + join(config.sweep, ";"))
        << " alpha=" << format_real(config.alpha) << '\n';
    out << "image,method,smoothing,q,prec,rec,f\n";
    for (const auto& block : blocks) {
        const std::string q = block.q ? format_real(*block.q) : std::string();
        for (const auto& row : block.rows) {
            out << row.image << ',' << row.method << ',' << row.smoothing << ',' << q << ',' << triplet(row.triplet)
                << '\n';
        }
        out << "MEAN," << block.method << ',' << block.smoothing << ',' << q << ',' << triplet(block.mean) << '\n';
    }
    write_text(path, out.str());
    fs::path resolved = path;
    resolved.replace_extension(".config.txt");
    write_text(resolved, to_config_text(config));
}

}  // namespace edgefuse
