#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "edgefuse/image_io.hpp"
#include "edgefuse/pipeline.hpp"
#include "support.hpp"

using namespace edgefuse;
namespace fs = std::filesystem;

namespace {

class TempDir : public ::testing::Test {
protected:
    void SetUp() override {
        const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir_ = fs::temp_directory_path() / (std::string("edgefuse_") + info->test_suite_name() + "_" + info->name());
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    fs::path path(const std::string& name) const { return dir_ / name; }

    fs::path dir_;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream(p, std::ios::binary) << text;
}

EdgeMap column_map(int rows, int cols, int col, int upto = -1) {
    EdgeMap m(rows, cols, 0);
    for (int r = 0; r < (upto < 0 ? rows : upto); ++r) {
        m(r, col) = 1;
    }
    return m;
}

// Quantized to 8 bits so the PNG written for it reads back exactly.
GrayImage quantized_step(int rows, int cols, int col) {
    GrayImage img = edgefuse::testing::step_image(rows, cols, col);
    for (double& v : img.pixels()) {
        v = std::round(v * 255.0) / 255.0;
    }
    return img;
}

const std::vector<std::string> kAllMethods{"choquet:copula_cf", "choquet:overlap_ob", "choquet:f_bpc",
                                           "choquet:hamacher",  "canny",              "grav:sp",
                                           "grav:sm",           "fmss"};

}  // namespace

// ---------------------------------------------------------------- image I/O

using ImageIo = TempDir;

TEST_F(ImageIo, PngAndPgmRoundTripAtEightBits) {
    edgefuse::testing::Rng rng(71);
    const GrayImage img = edgefuse::testing::random_image(rng, 7, 9);
    for (const char* name : {"a.png", "a.pgm"}) {
        write_gray_image(path(name), img);
        const GrayImage back = read_gray_image(path(name));
        ASSERT_EQ(back.rows(), 7);
        ASSERT_EQ(back.cols(), 9);
        for (std::size_t i = 0; i < img.size(); ++i) {
            ASSERT_EQ(back.pixels()[i], std::round(255.0 * img.pixels()[i]) / 255.0) << name;
        }
    }
}

TEST_F(ImageIo, ColourIsReducedWithLumaWeights) {
    write_file(path("c.ppm"), std::string("P6\n2 1\n255\n") + std::string("\xff\x00\x00\x00\x00\xff", 6));
    const GrayImage g = read_gray_image(path("c.ppm"));
    EXPECT_NEAR(g(0, 0), 0.299, 1e-12);
    EXPECT_NEAR(g(0, 1), 0.114, 1e-12);
    write_file(path("c.ppm"), "P3\n1 1\n100\n100 100 100\n");
    EXPECT_NEAR(read_gray_image(path("c.ppm"))(0, 0), 1.0, 1e-12);
}

TEST_F(ImageIo, EdgeMapsRoundTrip) {
    edgefuse::testing::Rng rng(72);
    EdgeMap m(11, 13, 0);
    for (auto& v : m.pixels()) {
        v = edgefuse::testing::uniform(rng) < 0.3;
    }
    for (const char* name : {"e.png", "e.pbm"}) {
        write_edge_map(path(name), m);
        EXPECT_EQ(read_edge_map(path(name)), m) << name;
    }
    write_file(path("ascii.pbm"), "P1\n# comment\n3 2\n1 0 0\n0 0 1\n");
    const EdgeMap a = read_edge_map(path("ascii.pbm"));
    EXPECT_EQ(a(0, 0), 1);
    EXPECT_EQ(a(1, 2), 1);
    EXPECT_EQ(count_edges(a), 2u);
}

TEST_F(ImageIo, UnreadableFilesThrowWithPath) {
    write_file(path("junk.png"), "not an image");
    try {
        (void)read_gray_image(path("junk.png"));
        FAIL();
    } catch (const std::runtime_error& e) {
        EXPECT_NE(std::string(e.what()).find("junk.png"), std::string::npos);
    }
    EXPECT_THROW((void)read_gray_image(path("missing.png")), std::runtime_error);
    write_file(path("short.pgm"), "P5\n4 4\n255\nab");
    EXPECT_THROW((void)read_gray_image(path("short.pgm")), std::runtime_error);
}

TEST_F(ImageIo, RawDoublesRoundTripExactly) {
    edgefuse::testing::Rng rng(73);
    const GrayImage img = edgefuse::testing::random_image(rng, 5, 8);
    write_raw_gray(path("x.f64"), img);
    EXPECT_EQ(fs::file_size(path("x.f64")), 5u * 8u * 8u);
    EXPECT_EQ(read_raw_gray(path("x.f64"), 5, 8), img);
    EXPECT_THROW((void)read_raw_gray(path("x.f64"), 6, 8), std::runtime_error);
}

// ---------------------------------------------------------------- methods

TEST(MethodParse, KnownIdentifiers) {
    EXPECT_EQ(Method::parse("choquet:copula_cf").id(), "choquet:copula_cf:0.8");
    EXPECT_EQ(Method::parse("choquet:f_bpc").q(), 0.4);
    EXPECT_EQ(Method::parse("choquet:hamacher").q(), 1.0);
    EXPECT_EQ(Method::parse("choquet:copula_cf:0.5").q(), 0.5);
    EXPECT_EQ(Method::parse("choquet:ct:ss:-5:0.8").id(), "choquet:ct:ss:-5:0.8");
    EXPECT_EQ(Method::parse("choquet").id(), "choquet:choquet:1");
    EXPECT_EQ(Method::parse("canny").id(), "canny");
    EXPECT_EQ(Method::parse("grav:sp").id(), "grav:sp");
    EXPECT_EQ(Method::parse("grav:sm").id(), "grav:sm");
    EXPECT_EQ(Method::parse("fmss").id(), "fmss");
    EXPECT_FALSE(Method::parse("canny").q());
    EXPECT_TRUE(Method::parse("choquet:overlap_ob").uses_features());
    EXPECT_FALSE(Method::parse("fmss").uses_features());
}

TEST(MethodParse, ExponentPrecedence) {
    Method::Options options;
    options.q = 0.3;
    EXPECT_EQ(Method::parse("choquet:copula_cf", options).q(), 0.3);
    EXPECT_EQ(Method::parse("choquet:copula_cf:0.9", options).q(), 0.9);
}

TEST(MethodParse, UnknownIdentifiersAreConfigErrors) {
    for (const char* id : {"sobel", "choquet:nope", "choquet:copula_cf:x", "grav:xx", "choquet:copula_cf:0", "chocolate"}) {
        EXPECT_THROW((void)Method::parse(id), ConfigError) << id;
    }
    Method::Options bad;
    bad.fm_radius = 0;
    EXPECT_THROW((void)Method::parse("fmss", bad), ConfigError);
}

TEST(Detect, ConstantInputGivesNoEdges) {
    const GrayImage img(20, 20, 0.6);
    for (const auto& id : kAllMethods) {
        for (const char* s : {"s1", "s3"}) {
            const auto out = detect(img, smoothing_preset(s), Method::parse(id), HysteresisParams::defaults());
            EXPECT_EQ(count_edges(out.edges), 0u) << id << " " << s;
        }
    }
}

TEST(Detect, StepGivesOneStraightLine) {
    const GrayImage img = edgefuse::testing::step_image(32, 32, 15);
    const auto out = detect(img, smoothing_preset("s1"), Method::parse("choquet:copula_cf:0.8"), HysteresisParams::defaults());
    EXPECT_EQ(out.edges, column_map(32, 32, 15));
    ASSERT_TRUE(out.features);
    EXPECT_EQ(out.thinned, thin_response(out.conditioned, out.blended));
}

TEST(Detect, WithoutSmoothingUsesInputAsConditioned) {
    edgefuse::testing::Rng rng(74);
    const GrayImage img = edgefuse::testing::random_image(rng, 12, 12);
    const auto out = detect(img, std::nullopt, Method::parse("canny"), HysteresisParams::defaults());
    EXPECT_EQ(out.conditioned, img);
    EXPECT_FALSE(out.features);
}

// ---------------------------------------------------------------- configuration

using Config = TempDir;

TEST_F(Config, SettingsAndErrors) {
    PipelineConfig c;
    apply_setting(c, "methods", "canny, fmss");
    apply_setting(c, "smoothing", "\"s2\"");
    apply_setting(c, "low", "0.3");
    apply_setting(c, "threshold_mode", "absolute");
    apply_setting(c, "dump", "p1,p3");
    apply_setting(c, "raw_size", "4x6");
    apply_setting(c, "blend", "hamacher");
    EXPECT_EQ(c.methods, std::vector<std::string>{"choquet:hamacher"});
    EXPECT_EQ(c.smoothings, std::vector<std::string>{"s2"});
    EXPECT_EQ(c.low, 0.3);
    EXPECT_EQ(c.threshold_mode, ThresholdMode::absolute);
    EXPECT_EQ(c.dumps, (std::set<std::string>{"p1", "p3"}));
    EXPECT_EQ(c.raw_rows, 4);
    EXPECT_EQ(c.raw_cols, 6);
    EXPECT_THROW(apply_setting(c, "colour", "red"), ConfigError);
    EXPECT_THROW(apply_setting(c, "low", "abc"), ConfigError);
    EXPECT_THROW(apply_setting(c, "dump", "p9"), ConfigError);
    EXPECT_THROW(apply_setting(c, "iterations", "2.5"), ConfigError);
    EXPECT_THROW(apply_setting(c, "threshold_mode", "otsu"), ConfigError);
}

TEST_F(Config, FileErrorsCarryLineNumbers) {
    write_file(path("bad.cfg"), "# comment\nmethods = canny\n\nthis line is wrong\n");
    PipelineConfig c;
    try {
        load_config_file(path("bad.cfg"), c);
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find(":4:"), std::string::npos) << e.what();
    }
    EXPECT_THROW(load_config_file(path("absent.cfg"), c), InputError);
}

TEST_F(Config, TextRoundTrips) {
    PipelineConfig c;
    c.inputs = {"a.png", "dir"};
    c.methods = {"canny", "choquet:f_bpc:0.4"};
    c.smoothings = {"s1", "custom"};
    c.custom_kind = "gravitational";
    c.q = 0.7;
    c.sigma = 1.0 / 3.0;
    c.fm_lambda = -std::numeric_limits<double>::infinity();
    c.sweep = {0.55, 0.9};
    c.dumps = {};
    c.raw_rows = 3;
    c.raw_cols = 9;
    c.image_format = "pnm";
    const std::string text = to_config_text(c);
    write_file(path("rt.cfg"), text);
    PipelineConfig back;
    load_config_file(path("rt.cfg"), back);
    EXPECT_EQ(to_config_text(back), text);
    EXPECT_EQ(back.sigma, c.sigma);
    EXPECT_EQ(back.q, c.q);
    EXPECT_TRUE(back.dumps.empty());
}

TEST(ResolveSmoothing, PresetsAndCustom) {
    PipelineConfig c;
    EXPECT_TRUE(std::holds_alternative<GaussianSmoothing>(resolve_smoothing(c, "s1")));
    c.custom_kind = "gravitational";
    c.omega_c = 33;
    const auto custom = std::get<GravitationalSmoothing>(resolve_smoothing(c, "custom"));
    EXPECT_EQ(custom.tonal_weight, 33);
    c.iterations = 0;
    EXPECT_THROW((void)resolve_smoothing(c, "custom"), ConfigError);
    EXPECT_THROW((void)resolve_smoothing(c, "s9"), ConfigError);
}

TEST(ThresholdParams, InvalidOrderingIsConfigError) {
    PipelineConfig c;
    c.low = 0.9;
    c.high = 0.5;
    EXPECT_THROW((void)threshold_params(c), ConfigError);
    c.low = 0.4;
    EXPECT_EQ(threshold_params(c, 0.7).high(), 0.7);
}

// ---------------------------------------------------------------- run

using PipelineRun = TempDir;

TEST_F(PipelineRun, WritesRequestedDumpsAndResolvedConfig) {
    write_gray_image(path("step.png"), quantized_step(24, 24, 11));
    PipelineConfig c;
    c.inputs = {path("step.png").string()};
    c.output_dir = path("out").string();
    c.dumps = {"p1", "p2", "p3", "p4"};
    c.smoothings = {"s1"};
    const RunSummary s = run_pipeline(c);
    for (const char* f : {"step_p1.png", "step_p1.f64", "step_p2_features.f64", "step_p3.png", "step_p3.f64",
                          "step_p4.png", "resolved_config.txt"}) {
        EXPECT_TRUE(fs::exists(path("out") / f)) << f;
    }
    EXPECT_EQ(s.written.size(), 7u);
    EXPECT_EQ(read_edge_map(path("out/step_p4.png")), column_map(24, 24, 11));
    EXPECT_EQ(fs::file_size(path("out/step_p2_features.f64")), 24u * 24u * 8u * 8u);
    PipelineConfig resolved;
    load_config_file(path("out/resolved_config.txt"), resolved);
    EXPECT_EQ(to_config_text(resolved), to_config_text(c));
}

TEST_F(PipelineRun, ConstantInputWritesEmptyEdgeMap) {
    write_gray_image(path("flat.pgm"), GrayImage(16, 16, 0.5));
    PipelineConfig c;
    c.inputs = {path("flat.pgm").string()};
    c.output_dir = path("out").string();
    c.image_format = "pnm";
    for (const auto& id : kAllMethods) {
        c.methods = {id};
        run_pipeline(c);
        EXPECT_EQ(count_edges(read_edge_map(path("out/flat_p4.pbm"))), 0u) << id;
    }
}

TEST_F(PipelineRun, RepeatedRunsAreByteIdentical) {
    edgefuse::testing::Rng rng(75);
    write_gray_image(path("a.png"), edgefuse::testing::random_image(rng, 30, 26));
    write_gray_image(path("b.png"), edgefuse::testing::random_image(rng, 18, 21));
    PipelineConfig c;
    c.inputs = {dir_.string()};
    c.dumps = {"p1", "p2", "p3", "p4"};
    c.jobs = 2;
    c.output_dir = path("first").string();
    run_pipeline(c);
    c.output_dir = path("second").string();
    run_pipeline(c);
    for (const auto& entry : fs::directory_iterator(path("first"))) {
        if (entry.path().filename() == "resolved_config.txt") {
            continue;
        }
        EXPECT_EQ(slurp(entry.path()), slurp(path("second") / entry.path().filename())) << entry.path();
    }
}

TEST_F(PipelineRun, ConditionedDumpRefeedsToTheSameEdges) {
    edgefuse::testing::Rng rng(76);
    write_gray_image(path("in.png"), edgefuse::testing::random_image(rng, 25, 31));
    for (const char* method : {"choquet:f_bpc", "canny", "grav:sm"}) {
        PipelineConfig c;
        c.inputs = {path("in.png").string()};
        c.methods = {method};
        c.smoothings = {"s3"};
        c.dumps = {"p1", "p3", "p4"};
        c.output_dir = path("full").string();
        run_pipeline(c);

        PipelineConfig staged = c;
        staged.inputs = {path("full/in_p1.f64").string()};
        staged.input_stage = "p1";
        staged.raw_rows = 25;
        staged.raw_cols = 31;
        staged.output_dir = path("staged").string();
        run_pipeline(staged);
        EXPECT_EQ(slurp(path("full/in_p4.png")), slurp(path("staged/in_p1_p4.png"))) << method;
        EXPECT_EQ(slurp(path("full/in_p3.f64")), slurp(path("staged/in_p1_p3.f64"))) << method;
    }
}

TEST_F(PipelineRun, DistinctErrors) {
    write_gray_image(path("ok.png"), GrayImage(8, 8, 0.5));
    PipelineConfig c;
    c.output_dir = path("out").string();
    c.inputs = {path("nope.png").string()};
    EXPECT_THROW(run_pipeline(c), InputError);
    write_file(path("junk.png"), "garbage");
    c.inputs = {path("junk.png").string()};
    EXPECT_THROW(run_pipeline(c), InputError);
    c.inputs = {path("ok.png").string()};
    c.methods = {"magic"};
    EXPECT_THROW(run_pipeline(c), ConfigError);
    c.methods = {"canny"};
    write_file(path("blocker"), "");
    c.output_dir = (path("blocker") / "sub").string();
    EXPECT_THROW(run_pipeline(c), OutputError);
}

TEST_F(PipelineRun, RawInputNeedsDimensions) {
    write_raw_gray(path("x.f64"), GrayImage(4, 4, 0.1));
    PipelineConfig c;
    c.inputs = {path("x.f64").string()};
    c.output_dir = path("out").string();
    EXPECT_THROW(run_pipeline(c), ConfigError);
}

// ---------------------------------------------------------------- benchmark

using Bench = TempDir;

TEST_F(Bench, GroundTruthLookup) {
    fs::create_directories(path("gt/img3"));
    for (const char* f : {"gt/img1.png", "gt/img1_2.pbm", "gt/img1-x.png", "gt/img10.png", "gt/img3/a.png", "gt/note.txt"}) {
        write_file(path(f), "");
    }
    const auto one = ground_truth_files(path("gt"), "img1");
    ASSERT_EQ(one.size(), 3u);
    EXPECT_EQ(one[0].filename(), "img1-x.png");
    EXPECT_EQ(ground_truth_files(path("gt"), "img3").size(), 1u);
    EXPECT_TRUE(ground_truth_files(path("gt"), "img2").empty());
}

TEST_F(Bench, ImageMatchingItsTruthScoresOne) {
    fs::create_directories(path("img"));
    fs::create_directories(path("gt"));
    write_gray_image(path("img/s.png"), quantized_step(20, 20, 9));
    write_edge_map(path("gt/s.png"), column_map(20, 20, 9));
    PipelineConfig c;
    c.inputs = {path("img").string()};
    c.ground_truth = path("gt").string();
    c.smoothings = {"s1"};
    c.report = path("r.csv").string();
    const auto blocks = run_benchmark(c);
    ASSERT_EQ(blocks.size(), 1u);
    EXPECT_EQ(blocks[0].mean.precision, 1.0);
    EXPECT_EQ(blocks[0].mean.recall, 1.0);
    EXPECT_EQ(blocks[0].mean.f, 1.0);
}

TEST_F(Bench, TwoImageAveragesMatchHandCounts) {
    fs::create_directories(path("img"));
    fs::create_directories(path("gt"));
    write_gray_image(path("img/a.png"), quantized_step(20, 20, 9));
    write_gray_image(path("img/b.png"), quantized_step(20, 20, 9));
    write_edge_map(path("gt/a.png"), column_map(20, 20, 9));
    // b's truth keeps only the top half of the detected column.
    write_edge_map(path("gt/b_0.png"), column_map(20, 20, 9, 10));
    PipelineConfig c;
    c.inputs = {path("img").string()};
    c.ground_truth = path("gt").string();
    c.methods = {"choquet:copula_cf", "canny"};
    c.smoothings = {"s1", "s2"};
    c.report = path("out/r.csv").string();
    c.jobs = 2;
    const auto blocks = run_benchmark(c);
    ASSERT_EQ(blocks.size(), 4u);
    // The tolerance on 20x20 is below one pixel, so only the truth's own ten rows match.
    ASSERT_LT(tolerance_radius(20, 20), 1.0);
    const double pb = 10.0 / 20.0;
    for (const auto& b : blocks) {
        ASSERT_EQ(b.rows.size(), 2u);
        EXPECT_EQ(b.rows[0].triplet.f, 1.0) << b.method << " " << b.smoothing;
        EXPECT_NEAR(b.rows[1].triplet.precision, pb, 1e-15);
        EXPECT_EQ(b.rows[1].triplet.recall, 1.0);
        EXPECT_NEAR(b.mean.precision, (1.0 + pb) / 2, 1e-15);
        EXPECT_NEAR(b.mean.f, (1.0 + 2 * pb / (pb + 1.0)) / 2, 1e-15);
    }
    EXPECT_EQ(blocks[0].method, "choquet:copula_cf:0.8");
    EXPECT_EQ(blocks[0].smoothing, "s1");
    EXPECT_EQ(blocks[1].smoothing, "s2");
    EXPECT_EQ(blocks[2].method, "canny");

    std::istringstream csv(slurp(path("out/r.csv")));
    std::string line;
    std::getline(csv, line);
    EXPECT_EQ(line.rfind("# threshold_mode=percentile", 0), 0u) << line;
    std::getline(csv, line);
    EXPECT_EQ(line, "image,method,smoothing,q,prec,rec,f");
    std::getline(csv, line);
    EXPECT_EQ(line, "a,choquet:copula_cf:0.8,s1,0.8,1.000000,1.000000,1.000000");
    std::getline(csv, line);
    std::getline(csv, line);
    EXPECT_EQ(line.rfind("MEAN,choquet:copula_cf:0.8,s1,0.8,0.750000,1.000000,0.833333", 0), 0u) << line;
    EXPECT_TRUE(fs::exists(path("out/r.config.txt")));
}

TEST_F(Bench, MissingTruthsAreListed) {
    fs::create_directories(path("img"));
    fs::create_directories(path("gt"));
    for (const char* f : {"img/one.png", "img/two.png", "img/three.png"}) {
        write_gray_image(path(f), GrayImage(5, 5, 0.2));
    }
    write_edge_map(path("gt/two.png"), EdgeMap(5, 5, 0));
    PipelineConfig c;
    c.inputs = {path("img").string()};
    c.ground_truth = path("gt").string();
    c.report = path("r.csv").string();
    try {
        (void)run_benchmark(c);
        FAIL();
    } catch (const InputError& e) {
        const std::string msg = e.what();
        EXPECT_NE(msg.find("one.png"), std::string::npos) << msg;
        EXPECT_NE(msg.find("three.png"), std::string::npos) << msg;
        EXPECT_EQ(msg.find("two.png"), std::string::npos) << msg;
    }
}

// ---------------------------------------------------------------- command line

using Cli = TempDir;

namespace {

int run_edge(const std::string& args, const fs::path& log) {
    const std::string cmd = std::string("\"") + EDGE_BINARY + "\" " + args + " > \"" + log.string() + "\" 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_F(Cli, RunSucceedsAndConfigIsOverridden) {
    write_gray_image(path("s.png"), quantized_step(20, 20, 9));
    write_file(path("c.cfg"), "methods = fmss\nsmoothings = s2\nhigh = 0.9\n");
    const std::string args = "run --config " + path("c.cfg").string() + " --in " + path("s.png").string() +
                             " --smoothing s1 --dump p1,p4 --out " + path("out").string();
    ASSERT_EQ(run_edge(args, path("log")), 0) << slurp(path("log"));
    EXPECT_TRUE(fs::exists(path("out/s_p4.png")));
    EXPECT_TRUE(fs::exists(path("out/s_p1.png")));
    PipelineConfig resolved;
    load_config_file(path("out/resolved_config.txt"), resolved);
    EXPECT_EQ(resolved.methods, std::vector<std::string>{"fmss"});
    EXPECT_EQ(resolved.smoothings, std::vector<std::string>{"s1"});
    EXPECT_EQ(resolved.high, 0.9);
}

TEST_F(Cli, FailuresHaveDistinctExitCodesAndMessages) {
    write_gray_image(path("s.png"), GrayImage(8, 8, 0.3));
    write_file(path("blocker"), "");
    EXPECT_EQ(run_edge("run --in " + path("s.png").string() + " --method sobel --out " + path("o").string(), path("l1")), 2);
    EXPECT_NE(slurp(path("l1")).find("unknown method 'sobel'"), std::string::npos);
    EXPECT_EQ(run_edge("run --in " + path("missing.png").string() + " --out " + path("o").string(), path("l2")), 3);
    EXPECT_NE(slurp(path("l2")).find("missing.png"), std::string::npos);
    EXPECT_EQ(run_edge("run --in " + path("s.png").string() + " --out " + (path("blocker") / "x").string(), path("l3")), 4);
    EXPECT_NE(slurp(path("l3")).find("output directory"), std::string::npos);
    EXPECT_NE(run_edge("frobnicate", path("l4")), 0);
}

TEST_F(Cli, BenchWritesReport) {
    fs::create_directories(path("img"));
    fs::create_directories(path("gt"));
    write_gray_image(path("img/s.png"), quantized_step(20, 20, 9));
    write_edge_map(path("gt/s.png"), column_map(20, 20, 9));
    const std::string args = "bench --in " + path("img").string() + " --gt " + path("gt").string() +
                             " --methods canny,choquet:hamacher --smoothings s1,s3 --report " + path("r.csv").string();
    ASSERT_EQ(run_edge(args, path("log")), 0) << slurp(path("log"));
    const std::string csv = slurp(path("r.csv"));
    EXPECT_NE(csv.find("MEAN,canny,s3,,1.000000,1.000000,1.000000"), std::string::npos) << csv;
    EXPECT_NE(csv.find("MEAN,choquet:hamacher:1,s1,1,"), std::string::npos) << csv;
}
