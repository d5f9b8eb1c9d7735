#include <relief/cli/commands.hpp>
#include <relief/cli/run_config.hpp>
#include <relief/tensor_io.hpp>

#include "oracles.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <sstream>

namespace relief::cli {
namespace {

using relief::testing::read_file;
using relief::testing::TempDir;
using relief::testing::write_file;

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        const auto r = invoke({"synth", "--out", (dir / "corpus").string(), "--count", "3", "--seed", "7"});
        ASSERT_EQ(r.code, 0) << r.err;
    }
    std::string corpus() const { return (dir / "corpus").string(); }
    std::string stack(int i) const { return (dir / "corpus" / ("scene_000" + std::to_string(i) + ".rfm")).string(); }

    TempDir dir;
};

TEST_F(CliTest, SynthIsDeterministic) {
    const auto r = invoke({"synth", "--out", (dir / "again").string(), "--count", "3", "--seed", "7"});
    ASSERT_EQ(r.code, 0) << r.err;
    for (const std::string name : {"scene_0000.rfm", "scene_0001.rfm", "scene_0002.rfm",
                                   "scene_0002.rfm.geom.json", "annotations.jsonl"}) {
        EXPECT_EQ(read_file(dir / "corpus" / name), read_file(dir / "again" / name)) << name;
    }
}

TEST_F(CliTest, GenerateDefaults) {
    const auto out = (dir / "p.jsonl").string();
    const auto r = invoke({"generate", "--features", stack(0), "--out", out});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("boxes"), std::string::npos);
    EXPECT_NE(r.out.find("ms"), std::string::npos);
    const auto props = io::load_proposals(out);
    ASSERT_EQ(props.size(), 1u);
    EXPECT_EQ(props[0].image_id, "scene_0000");
    int bigs = 0, smalls = 0, scaled = 0;
    for (const auto& b : props[0].boxes) {
        bigs += b.kind == BoxKind::kBig;
        smalls += b.kind == BoxKind::kSmall;
        scaled += b.kind == BoxKind::kScaled;
    }
    EXPECT_LE(bigs, 10);
    EXPECT_GT(smalls, 0);
    EXPECT_GT(scaled, 0);
}

TEST_F(CliTest, NoLocalSearchFlag) {
    const auto out = (dir / "p.jsonl").string();
    ASSERT_EQ(invoke({"generate", "--features", corpus(), "--out", out, "--no-local-search"}).code, 0);
    for (const auto& set : io::load_proposals(out))
        for (const auto& b : set.boxes) EXPECT_NE(b.kind, BoxKind::kScaled);
}

TEST_F(CliTest, IdentityLoopsMatchNoLoops) {
    const auto a = (dir / "a.jsonl").string();
    const auto b = (dir / "b.jsonl").string();
    ASSERT_EQ(invoke({"generate", "--features", corpus(), "--out", a, "--loops", "3", "--regressor", "identity"}).code, 0);
    ASSERT_EQ(invoke({"generate", "--features", corpus(), "--out", b, "--loops", "0"}).code, 0);
    const auto pa = io::load_proposals(a);
    const auto pb = io::load_proposals(b);
    ASSERT_EQ(pa.size(), pb.size());
    for (std::size_t i = 0; i < pa.size(); ++i) EXPECT_EQ(pa[i].boxes, pb[i].boxes);
}

TEST_F(CliTest, AffineLoopsMarkRefined) {
    const auto out = (dir / "p.jsonl").string();
    ASSERT_EQ(invoke({"generate", "--features", stack(1), "--out", out, "--loops", "2", "--regressor", "affine",
                      "--dw", "-0.2", "--dh", "-0.2"}).code,
              0);
    const auto props = io::load_proposals(out);
    EXPECT_TRUE(std::any_of(props[0].boxes.begin(), props[0].boxes.end(),
                            [](const BoxPx& b) { return b.kind == BoxKind::kRefined; }));
}

TEST_F(CliTest, ParallelJobsMatchSerial) {
    const auto a = (dir / "a.jsonl").string();
    const auto b = (dir / "b.jsonl").string();
    ASSERT_EQ(invoke({"generate", "--features", corpus(), "--out", a, "--jobs", "3"}).code, 0);
    ASSERT_EQ(invoke({"generate", "--features", corpus(), "--out", b}).code, 0);
    auto pa = io::load_proposals(a);
    auto pb = io::load_proposals(b);
    ASSERT_EQ(pa.size(), 3u);
    for (std::size_t i = 0; i < pa.size(); ++i) {
        EXPECT_EQ(pa[i].image_id, pb[i].image_id);
        EXPECT_EQ(pa[i].boxes, pb[i].boxes);
    }
}

TEST_F(CliTest, EvalPerfectAndGrid) {
    const auto props = (dir / "perfect.jsonl").string();
    const auto ann = io::load_annotations(dir / "corpus" / "annotations.jsonl");
    std::vector<ProposalSet> perfect;
    for (const auto& rec : ann.records) perfect.push_back({rec.image_id, rec.gt_boxes, 0});
    io::save_proposals(perfect, props);

    const auto csv = (dir / "curve.csv").string();
    const auto r = invoke({"eval", "--proposals", props, "--annotations", (dir / "corpus" / "annotations.jsonl").string(),
                           "--out", csv, "--iou-grid", "0.5:1.0:0.25"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(read_file(csv), "iou_threshold,recall\n0.5,1\n0.75,1\n1,1\n");
    EXPECT_NE(r.out.find("recall@0.5=1.0000"), std::string::npos);
    EXPECT_NE(r.out.find("recall@0.7=1.0000"), std::string::npos);

    const auto r2 = invoke({"eval", "--proposals", props, "--annotations", (dir / "corpus" / "annotations.jsonl").string(),
                            "--out", csv});
    ASSERT_EQ(r2.code, 0);
    std::istringstream lines(read_file(csv));
    int rows = 0;
    for (std::string line; std::getline(lines, line);) ++rows;
    EXPECT_EQ(rows, 12);  // header + 0.5..1.0 step 0.05
}

TEST_F(CliTest, EvalTopKCapsProposals) {
    const auto props = (dir / "p.jsonl").string();
    ASSERT_EQ(invoke({"generate", "--features", corpus(), "--out", props}).code, 0);
    const auto ann = (dir / "corpus" / "annotations.jsonl").string();
    const auto full = (dir / "full.csv").string();
    const auto capped = (dir / "capped.csv").string();
    ASSERT_EQ(invoke({"eval", "--proposals", props, "--annotations", ann, "--out", full}).code, 0);
    ASSERT_EQ(invoke({"eval", "--proposals", props, "--annotations", ann, "--out", capped, "--top-k", "1"}).code, 0);
    const auto f = read_file(full);
    const auto c = read_file(capped);
    EXPECT_NE(f, c);
    ASSERT_EQ(invoke({"eval", "--proposals", props, "--annotations", ann, "--out", capped, "--top-k", "200"}).code, 0);
}

TEST_F(CliTest, EvalMissingIdsExitOne) {
    const auto props = (dir / "p.jsonl").string();
    io::save_proposals({ProposalSet{"scene_0001", {}, 0}}, props);
    const auto r = invoke({"eval", "--proposals", props, "--annotations", (dir / "corpus" / "annotations.jsonl").string(),
                           "--out", (dir / "c.csv").string()});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("scene_0000"), std::string::npos);
    EXPECT_NE(r.err.find("scene_0002"), std::string::npos);
}

TEST_F(CliTest, BenchWritesOneRow) {
    const auto csv = (dir / "bench.csv").string();
    const auto r = invoke({"bench", "--features", corpus(), "--repeats", "2", "--out", csv});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream lines(read_file(csv));
    std::string header, row, extra;
    std::getline(lines, header);
    std::getline(lines, row);
    EXPECT_EQ(header, "images,mean_proposals,mean_time_ns,p50_ns,p95_ns");
    EXPECT_EQ(row.substr(0, 2), "3,");
    EXPECT_FALSE(std::getline(lines, extra));
}

TEST_F(CliTest, FailuresExitOne) {
    EXPECT_EQ(invoke({"generate", "--features", (dir / "nope.rfm").string(), "--out", (dir / "x").string()}).code, 1);
    EXPECT_EQ(invoke({"generate", "--features", stack(0)}).code, 1);
    EXPECT_EQ(invoke({"generate", "--features", stack(0), "--out", "/nonexistent_dir_for_relief/p.jsonl"}).code, 1);
    EXPECT_EQ(invoke({"generate", "--features", stack(0), "--out", (dir / "x").string(), "--alpha", "1.2"}).code, 1);
    EXPECT_EQ(invoke({"generate", "--features", stack(0), "--out", (dir / "x").string(), "--connectivity", "6"}).code, 1);
    EXPECT_EQ(invoke({"frobnicate"}).code, 1);
    EXPECT_EQ(invoke({}).code, 1);
    EXPECT_EQ(invoke({"bench", "--features", corpus(), "--repeats", "0"}).code, 1);
}

TEST_F(CliTest, ConfigFileWithFlagOverride) {
    const auto cfg_path = dir / "cfg.json";
    write_file(cfg_path, R"({"levels": 4, "local_search": false, "features": ")" + stack(0) + R"("})");
    const auto out = (dir / "p.jsonl").string();
    const auto dumped = (dir / "effective.json").string();
    auto r = invoke({"generate", "--config", cfg_path.string(), "--out", out, "--levels", "6", "--dump-config", dumped});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto eff = load_run_config(dumped);
    EXPECT_EQ(eff.pipeline.level_count, 6);
    EXPECT_FALSE(eff.pipeline.local_search_enabled);
    EXPECT_EQ(eff.out, out);

    // The dumped config alone reproduces the run.
    const auto first = io::load_proposals(out);
    r = invoke({"generate", "--config", dumped});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto second = io::load_proposals(out);
    ASSERT_EQ(first.size(), second.size());
    EXPECT_EQ(first[0].boxes, second[0].boxes);
}

TEST_F(CliTest, UnknownConfigKeyRejected) {
    const auto cfg_path = dir / "cfg.json";
    write_file(cfg_path, R"({"levels": 4, "levelz": 3})");
    const auto r = invoke({"generate", "--config", cfg_path.string(), "--features", stack(0), "--out",
                           (dir / "p.jsonl").string()});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("levelz"), std::string::npos);
}

TEST(RunConfig, JsonRoundTrip) {
    RunConfig cfg;
    cfg.pipeline.level_count = 7;
    cfg.pipeline.connectivity = core::Connectivity::kFour;
    cfg.regressor = {refine::RegressorKind::kAffine, 0.1, -0.2, 0.3, -0.4};
    cfg.features = {"a.rfm", "dir"};
    cfg.top_k = 200;
    cfg.jobs = 4;
    const auto back = run_config_from_json(nlohmann::json::parse(run_config_to_json(cfg).dump()));
    EXPECT_EQ(back, cfg);
}

TEST(RunConfig, RejectsBadValues) {
    EXPECT_THROW(run_config_from_json(nlohmann::json::parse(R"({"regressor": {"kind": "affine", "dz": 1}})")), Error);
    EXPECT_THROW(run_config_from_json(nlohmann::json::parse(R"({"levels": "ten"})")), Error);
    EXPECT_THROW(run_config_from_json(nlohmann::json::parse(R"({"connectivity": 5})")), Error);
    EXPECT_THROW(run_config_from_json(nlohmann::json::parse(R"([1, 2])")), Error);
}

TEST(ParseGrid, Forms) {
    const auto g = parse_grid("0.5:1.0:0.25");
    EXPECT_EQ(g.lo, 0.5);
    EXPECT_EQ(g.hi, 1.0);
    EXPECT_EQ(g.step, 0.25);
    EXPECT_THROW(parse_grid("0.5-1.0"), Error);
    EXPECT_THROW(parse_grid("0.5:1.0:0"), Error);
    EXPECT_THROW(parse_grid("0.5:1.5:0.1"), Error);
}

}  // namespace
}  // namespace relief::cli
