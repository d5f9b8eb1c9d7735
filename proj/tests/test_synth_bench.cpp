#include <relief/bench.hpp>
#include <relief/eval.hpp>
#include <relief/synth.hpp>
#include <relief/tensor_io.hpp>

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <sstream>

namespace relief::eval {
namespace {

SynthParams params_for(std::uint64_t seed, int objects, double noise) {
    SynthParams p;
    p.geometry = {8.0, 8.0, 0.0, 0.0, 256, 256};
    p.n_objects = objects;
    p.noise_sigma = noise;
    p.seed = seed;
    return p;
}

TEST(SynthScene, NoObjectsIsPureNoise) {
    const auto scene = synth_scene(params_for(1, 0, 0.1));
    EXPECT_TRUE(scene.gt_boxes.empty());
    EXPECT_EQ(scene.stack.height, 32u);
    EXPECT_EQ(scene.stack.width, 32u);
    EXPECT_NO_THROW(scene.stack.validate());
}

TEST(SynthScene, SameSeedSameBytes) {
    const auto a = synth_scene(params_for(77, 4, 0.05));
    const auto b = synth_scene(params_for(77, 4, 0.05));
    EXPECT_EQ(io::encode_rfm1(a.stack), io::encode_rfm1(b.stack));
    EXPECT_EQ(a.gt_boxes, b.gt_boxes);
    const auto c = synth_scene(params_for(78, 4, 0.05));
    EXPECT_NE(io::encode_rfm1(a.stack), io::encode_rfm1(c.stack));
}

TEST(SynthScene, SingleBlobIsOneHighRegion) {
    auto p = params_for(5, 1, 0.0);
    p.blob_min_cells = 3;
    p.blob_max_cells = 3;
    const auto scene = synth_scene(p);
    ASSERT_EQ(scene.gt_boxes.size(), 1u);
    EXPECT_EQ(scene.gt_boxes[0].width(), 24);
    EXPECT_EQ(scene.gt_boxes[0].height(), 24);

    const auto map = core::build_integrate_map(scene.stack);
    std::vector<char> high(map.values.size());
    for (std::size_t i = 0; i < high.size(); ++i) high[i] = map.values[i] > 0.5f;
    const auto comps = oracle::flood_fill(high, map.height, map.width, true);
    ASSERT_EQ(comps.size(), 1u);
    ASSERT_EQ(comps[0].size(), 9u);
    const auto [r0, c0] = *comps[0].begin();
    EXPECT_EQ(c0 * 8, scene.gt_boxes[0].x0);
    EXPECT_EQ(r0 * 8, scene.gt_boxes[0].y0);
}

TEST(SynthScene, BoxesInsideImageAndSeparated) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        auto p = params_for(seed, 6, 0.0);
        p.geometry = {7.0, 5.0, 2.0, 3.0, 200, 150};
        const auto scene = synth_scene(p);
        for (std::size_t i = 0; i < scene.gt_boxes.size(); ++i) {
            EXPECT_TRUE(scene.gt_boxes[i].inside(p.geometry));
            for (std::size_t j = i + 1; j < scene.gt_boxes.size(); ++j) {
                EXPECT_EQ(iou(scene.gt_boxes[i], scene.gt_boxes[j]), 0.0);
            }
        }
    }
}

TEST(SynthScene, ImpossiblePlacementFails) {
    auto p = params_for(3, 50, 0.0);
    p.geometry = {8.0, 8.0, 0.0, 0.0, 40, 40};
    p.max_retries = 50;
    try {
        synth_scene(p);
        FAIL() << "expected PlacementFailed";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::kPlacementFailed);
    }
}

TEST(SynthScene, NoiselessScenesAreFullyRecalled) {
    for (std::uint64_t seed = 100; seed < 120; ++seed) {
        const auto scene = synth_scene(params_for(seed, 4, 0.0));
        const auto set = core::generate_proposals(scene.stack, core::PipelineConfig{});
        EXPECT_EQ(recall_at(scene.gt_boxes, set.boxes, 0.99), 1.0) << "seed " << seed;
    }
}

TEST(Bench, TrivialStack) {
    const std::vector<FeatureStack> stacks = {FeatureStack(1, 1, 1)};
    const auto report = bench(stacks, core::PipelineConfig{}, 3);
    EXPECT_EQ(report.images, 1u);
    EXPECT_GE(report.mean_proposals, 1.0);
    EXPECT_GT(report.mean_gen_time_ns, 0.0);
    EXPECT_GT(report.p50_ns, 0.0);
    EXPECT_LE(report.p50_ns, report.p95_ns);
    EXPECT_THROW(bench(stacks, core::PipelineConfig{}, 0), Error);
}

TEST(Bench, PercentileNearestRank) {
    EXPECT_EQ(percentile({5, 1, 3, 2, 4}, 0.5), 3.0);
    EXPECT_EQ(percentile({5, 1, 3, 2, 4}, 0.95), 5.0);
    EXPECT_EQ(percentile({7}, 0.5), 7.0);
    EXPECT_EQ(percentile({}, 0.5), 0.0);
}

TEST(Bench, CsvShape) {
    BenchReport r{2, 12.5, 1000.0, 900.0, 1500.0};
    std::ostringstream out;
    write_bench_csv(r, out);
    EXPECT_EQ(out.str(), "images,mean_proposals,mean_time_ns,p50_ns,p95_ns\n2,12.5,1000.0,900.0,1500.0\n");
}

TEST(Bench, ScalingIsRecorded) {
    // Records how mean time grows when H and W double; asserts only that the
    // measurement is sane, since the constant depends on the machine.
    std::mt19937 rng(1);
    std::vector<FeatureStack> small, large;
    for (int i = 0; i < 3; ++i) {
        small.push_back(oracle::random_stack(rng, 16, 32, 32, GeometryMeta{8, 8, 0, 0, 256, 256}));
        large.push_back(oracle::random_stack(rng, 16, 64, 64, GeometryMeta{8, 8, 0, 0, 512, 512}));
    }
    const auto a = bench(small, core::PipelineConfig{}, 5);
    const auto b = bench(large, core::PipelineConfig{}, 5);
    const double ratio = b.mean_gen_time_ns / a.mean_gen_time_ns;
    RecordProperty("time_ratio_2x_side", std::to_string(ratio));
    std::cout << "[ scaling ] 32x32 -> 64x64 mean time ratio: " << ratio << "\n";
    EXPECT_GT(ratio, 0.0);
}

}  // namespace
}  // namespace relief::eval
