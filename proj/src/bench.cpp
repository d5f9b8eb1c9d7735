#include <relief/bench.hpp>

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace relief::eval {

double percentile(std::vector<double> samples, double q) {
    if (samples.empty()) return 0.0;
    std::sort(samples.begin(), samples.end());
    const auto n = samples.size();
    auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(n)));
    rank = std::clamp<std::size_t>(rank, 1, n);
    return samples[rank - 1];
}

BenchReport bench(std::span<const FeatureStack> stacks, const core::PipelineConfig& cfg, int repeats) {
    if (repeats < 1) {
        throw Error(ErrorCode::kInvalidArgument, "repeats must be >= 1");
    }
    BenchReport report;
    report.images = stacks.size();
    if (stacks.empty()) return report;

    std::vector<double> times;
    times.reserve(stacks.size() * static_cast<std::size_t>(repeats));
    double proposal_total = 0.0;
    for (const auto& stack : stacks) {
        const auto warm = core::generate_proposals(stack, cfg);
        proposal_total += static_cast<double>(warm.boxes.size());
        for (int i = 0; i < repeats; ++i) {
            times.push_back(static_cast<double>(core::generate_proposals(stack, cfg).gen_time_ns));
        }
    }
    report.mean_proposals = proposal_total / static_cast<double>(stacks.size());
    report.mean_gen_time_ns = std::accumulate(times.begin(), times.end(), 0.0) /
                              static_cast<double>(times.size());
    report.p50_ns = percentile(times, 0.50);
    report.p95_ns = percentile(times, 0.95);
    return report;
}

void write_bench_csv(const BenchReport& report, std::ostream& out) {
    out << "images,mean_proposals,mean_time_ns,p50_ns,p95_ns\n";
    out << fmt::format("{},{},{:.1f},{:.1f},{:.1f}\n", report.images, report.mean_proposals,
                       report.mean_gen_time_ns, report.p50_ns, report.p95_ns);
}

}  // namespace relief::eval
