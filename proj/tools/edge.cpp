// edge: run the detector pipeline on images or benchmark it against ground truth.

#include <CLI11.hpp>

#include <cstdio>
#include <deque>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "edgefuse/pipeline.hpp"

namespace {

enum ExitCode : int {
    kOk = 0,
    kFailure = 1,
    kConfig = 2,
    kInput = 3,
    kOutput = 4,
};

// Options are kept as text and funnelled through apply_setting so the config
// file and the command line share one parser. Command-line values win.
class SettingBinder {
public:
    explicit SettingBinder(CLI::App& app) : app_(app) {}

    void add(const std::string& flag, const std::string& key, const std::string& help) {
        auto& slot = slots_.emplace_back(Slot{key, std::string(), nullptr});
        slot.option = app_.add_option(flag, slot.value, help);
    }

    void apply(edgefuse::PipelineConfig& config) const {
        for (const auto& slot : slots_) {
            if (slot.option->count() > 0) {
                edgefuse::apply_setting(config, slot.key, slot.value);
            }
        }
    }

private:
    struct Slot {
        std::string key;
        std::string value;
        CLI::Option* option;
    };
    CLI::App& app_;
    std::deque<Slot> slots_;
};

void add_common(SettingBinder& b) {
    b.add("--smoothing,--smoothings", "smoothings", "s1|s2|s3|s4|custom (comma list for bench)");
    b.add("--q", "q", "power-measure exponent for choquet methods");
    b.add("--low", "low", "low hysteresis level");
    b.add("--high", "high", "high hysteresis level");
    b.add("--threshold-mode", "threshold_mode", "percentile|absolute");
    b.add("--custom-kind", "custom_kind", "gaussian|gravitational (for --smoothing custom)");
    b.add("--sigma", "sigma", "custom Gaussian sigma");
    b.add("--gravity", "gravity", "custom gravitational constant G");
    b.add("--omega-c", "omega_c", "custom tonal weight");
    b.add("--iterations", "iterations", "custom gravitational iterations");
    b.add("--window", "window", "custom gravitational window radius");
    b.add("--canny-sigma2", "canny_sigma2", "derivative-filter sigma of the canny method");
    b.add("--fm-lambda", "fm_lambda", "Schweizer-Sklar lambda of the fmss method");
    b.add("--fm-radius", "fm_radius", "structuring-element radius of the fmss method");
    b.add("--fm-weight", "fm_weight", "off-centre structuring weight of the fmss method");
    b.add("--raw-size", "raw_size", "<rows>x<cols> for headerless .f64 inputs");
    b.add("--jobs", "jobs", "worker threads (0: all cores)");
}

int report_error(const char* kind, const std::exception& e, int code) {
    std::cerr << "edge: " << kind << ": " << e.what() << '\n';
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fuzzy-aggregation edge detection toolkit"};
    app.require_subcommand(1);

    std::string config_file;
    std::vector<std::string> inputs;

    CLI::App* run = app.add_subcommand("run", "detect edges and write stage dumps");
    SettingBinder run_settings(*run);
    run->add_option("--config", config_file, "key = value settings file (command line wins)");
    run->add_option("--in", inputs, "input image or directory (repeatable)");
    run_settings.add("--method", "methods", "choquet:<integral>[:<q>] | canny | grav:sp | grav:sm | fmss");
    run_settings.add("--blend", "blend", "integral id; shorthand for --method choquet:<id>");
    run_settings.add("--dump", "dumps", "stages to write: p1,p2,p3,p4 or none");
    run_settings.add("--out", "out", "output directory");
    run_settings.add("--input-stage", "input_stage", "p0 (raw image) or p1 (conditioned dump)");
    run_settings.add("--format", "format", "png|pnm");
    add_common(run_settings);

    CLI::App* bench = app.add_subcommand("bench", "score methods against ground truth and write a CSV report");
    SettingBinder bench_settings(*bench);
    bench->add_option("--config", config_file, "key = value settings file (command line wins)");
    bench->add_option("--in", inputs, "image directory or files (repeatable)");
    bench_settings.add("--gt", "gt", "ground-truth directory");
    bench_settings.add("--methods,--method", "methods", "comma-separated method ids");
    bench_settings.add("--report", "report", "CSV output path");
    bench_settings.add("--sweep", "sweep", "comma-separated high levels; best F per image is kept");
    bench_settings.add("--alpha", "alpha", "F-measure weight");
    add_common(bench_settings);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kConfig;
    }

    try {
        edgefuse::PipelineConfig config;
        if (!config_file.empty()) {
            edgefuse::load_config_file(config_file, config);
        }
        if (!inputs.empty()) {
            config.inputs = inputs;
        }
        if (run->parsed()) {
            run_settings.apply(config);
            if (config.inputs.empty()) {
                throw edgefuse::ConfigError("no input given (--in)");
            }
            const auto summary = edgefuse::run_pipeline(config);
            std::cout << "wrote " << summary.written.size() << " file(s) to " << config.output_dir << '\n';
        } else {
            bench_settings.apply(config);
            if (config.inputs.empty()) {
                throw edgefuse::ConfigError("no input given (--in)");
            }
            const auto blocks = edgefuse::run_benchmark(config);
            for (const auto& block : blocks) {
                std::printf("%-28s %-8s P=%.3f R=%.3f F=%.3f\n", block.method.c_str(), block.smoothing.c_str(),
                            block.mean.precision, block.mean.recall, block.mean.f);
            }
            std::cout << "report: " << config.report << '\n';
        }
    } catch (const edgefuse::ConfigError& e) {
        return report_error("configuration error", e, kConfig);
    } catch (const edgefuse::InputError& e) {
        return report_error("input error", e, kInput);
    } catch (const edgefuse::OutputError& e) {
        return report_error("output error", e, kOutput);
    } catch (const std::exception& e) {
        return report_error("error", e, kFailure);
    }
    return kOk;
}
