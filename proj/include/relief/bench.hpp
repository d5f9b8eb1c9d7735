#pragma once

#include <relief/pipeline.hpp>

#include <ostream>
#include <span>

namespace relief::eval {

struct BenchReport {
    std::size_t images = 0;
    double mean_proposals = 0.0;
    double mean_gen_time_ns = 0.0;
    double p50_ns = 0.0;
    double p95_ns = 0.0;
};

/// Nearest-rank percentile (q in [0,1]) of unsorted samples; 0 for empty input.
double percentile(std::vector<double> samples, double q);

/**
 * @brief Times generate_proposals over every stack, `repeats` times each,
 *        after one untimed warm-up run per stack.
 *
 * Runs on the calling thread only. Throws kInvalidArgument when repeats < 1.
 */
BenchReport bench(std::span<const FeatureStack> stacks, const core::PipelineConfig& cfg, int repeats);

/// `images,mean_proposals,mean_time_ns,p50_ns,p95_ns` header plus one row.
void write_bench_csv(const BenchReport& report, std::ostream& out);

}  // namespace relief::eval
