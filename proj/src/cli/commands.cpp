#include <relief/cli/commands.hpp>

#include <relief/bench.hpp>
#include <relief/cli/run_config.hpp>
#include <relief/eval.hpp>
#include <relief/synth.hpp>
#include <relief/tensor_io.hpp>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <mutex>
#include <thread>

namespace relief::cli {

namespace {

using Override = std::function<void(RunConfig&)>;

/// Flag values land in RunConfig only when the flag was actually given, so
/// a config file supplies the base and flags win.
class FlagSet {
public:
    explicit FlagSet(CLI::App* app) : app_(app) {}

    template <typename T, typename Setter>
    void option(const std::string& name, const std::string& help, Setter setter) {
        auto value = std::make_shared<T>();
        CLI::Option* opt = app_->add_option(name, *value, help);
        overrides_.push_back([opt, value, setter](RunConfig& cfg) {
            if (opt->count() > 0) setter(cfg, *value);
        });
    }

    template <typename Setter>
    void flag(const std::string& name, const std::string& help, Setter setter) {
        CLI::Option* opt = app_->add_flag(name, help);
        overrides_.push_back([opt, setter](RunConfig& cfg) {
            if (opt->count() > 0) setter(cfg);
        });
    }

    void apply(RunConfig& cfg) const {
        for (const auto& fn : overrides_) fn(cfg);
    }

private:
    CLI::App* app_;
    std::vector<Override> overrides_;
};

void add_pipeline_flags(FlagSet& flags) {
    flags.option<int>("--levels", "Number of feature levels",
                      [](RunConfig& c, int v) { c.pipeline.level_count = v; });
    flags.option<double>("--alpha", "Local-search shrink ratio",
                         [](RunConfig& c, double v) { c.pipeline.alpha = v; });
    flags.option<double>("--beta", "Local-search grow ratio",
                         [](RunConfig& c, double v) { c.pipeline.beta = v; });
    flags.option<int>("--connectivity", "Cluster connectivity, 4 or 8", [](RunConfig& c, int v) {
        c.pipeline.connectivity = core::connectivity_from_int(v);
    });
    flags.option<int>("--min-cluster-cells", "Drop clusters with fewer cells",
                      [](RunConfig& c, int v) { c.pipeline.min_cluster_cells = v; });
    flags.flag("--no-local-search", "Skip the four rescaled variants per box",
               [](RunConfig& c) { c.pipeline.local_search_enabled = false; });
    flags.flag("--no-dedup", "Keep exact duplicate boxes",
               [](RunConfig& c) { c.pipeline.dedup_exact = false; });
}

void add_refine_flags(FlagSet& flags) {
    flags.option<int>("--loops", "Recursive refinement rounds (0 disables)",
                      [](RunConfig& c, int v) { c.refine.loops = v; });
    flags.option<double>("--eps", "Per-corner convergence threshold in px",
                         [](RunConfig& c, double v) { c.refine.convergence_eps = v; });
    flags.option<std::string>("--regressor", "identity or affine", [](RunConfig& c, const std::string& v) {
        c.regressor.kind = refine::regressor_kind_from_string(v);
    });
    flags.option<double>("--dx", "Affine center shift, fraction of width",
                         [](RunConfig& c, double v) { c.regressor.dx = v; });
    flags.option<double>("--dy", "Affine center shift, fraction of height",
                         [](RunConfig& c, double v) { c.regressor.dy = v; });
    flags.option<double>("--dw", "Affine log width scale",
                         [](RunConfig& c, double v) { c.regressor.dw = v; });
    flags.option<double>("--dh", "Affine log height scale",
                         [](RunConfig& c, double v) { c.regressor.dh = v; });
}

void add_features_flag(FlagSet& flags) {
    flags.option<std::vector<std::string>>(
        "--features", "RFM1 files or directories of *.rfm",
        [](RunConfig& c, const std::vector<std::string>& v) { c.features = v; });
}

void add_out_flag(FlagSet& flags, const std::string& help) {
    flags.option<std::string>("--out", help, [](RunConfig& c, const std::string& v) { c.out = v; });
}

struct CommonArgs {
    std::string config_path;
    std::string dump_path;
};

void add_common(CLI::App* sub, CommonArgs& common) {
    sub->add_option("--config", common.config_path, "JSON config file; flags override its values");
    sub->add_option("--dump-config", common.dump_path, "Write the effective config to this path");
}

RunConfig resolve(const CommonArgs& common, const FlagSet& flags) {
    RunConfig cfg = common.config_path.empty() ? RunConfig{} : load_run_config(common.config_path);
    flags.apply(cfg);
    cfg.pipeline.validate();
    cfg.refine.validate();
    if (cfg.jobs < 1) throw Error(ErrorCode::kInvalidArgument, "jobs must be >= 1");
    if (!common.dump_path.empty()) save_run_config(cfg, common.dump_path);
    return cfg;
}

void require(bool ok, const std::string& what) {
    if (!ok) throw Error(ErrorCode::kInvalidArgument, what);
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

// -----------------------------------------------------------------------------
// generate
// -----------------------------------------------------------------------------

int cmd_generate(const RunConfig& cfg, std::ostream& out) {
    require(!cfg.features.empty(), "--features is required");
    require(!cfg.out.empty(), "--out is required");
    const auto files = collect_feature_files(cfg.features);
    require(!files.empty(), "no feature files found");

    const auto start = std::chrono::steady_clock::now();
    std::vector<ProposalSet> results(files.size());
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::string first_error;

    auto worker = [&] {
        for (std::size_t i = next++; i < files.size(); i = next++) {
            try {
                const FeatureStack stack = io::load_feature_stack(files[i]);
                ProposalSet set = core::generate_proposals(stack, cfg.pipeline, files[i].stem().string());
                if (cfg.refine.loops > 0) {
                    set.boxes = refine::recursive_refine(cfg.regressor, set.boxes, cfg.refine, stack.geometry);
                }
                spdlog::debug("{}: {} boxes in {} ns", set.image_id, set.boxes.size(), set.gen_time_ns);
                results[i] = std::move(set);
            } catch (const std::exception& e) {
                std::lock_guard lock(error_mutex);
                if (first_error.empty()) first_error = files[i].string() + ": " + e.what();
            }
        }
    };
    const auto n_workers = std::min<std::size_t>(static_cast<std::size_t>(cfg.jobs), files.size());
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < n_workers; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (!first_error.empty()) throw std::runtime_error(first_error);

    io::save_proposals(results, cfg.out);
    std::size_t total = 0;
    for (const auto& set : results) total += set.boxes.size();
    out << fmt::format("generated {} boxes for {} image(s) in {:.3f} ms\n", total, results.size(),
                       elapsed_ms(start));
    return 0;
}

// -----------------------------------------------------------------------------
// eval
// -----------------------------------------------------------------------------

int cmd_eval(const RunConfig& cfg, std::ostream& out) {
    require(!cfg.proposals.empty(), "--proposals is required");
    require(!cfg.annotations.empty(), "--annotations is required");
    require(!cfg.out.empty(), "--out is required");
    const auto corpus = io::load_annotations(cfg.annotations);
    const auto props = io::load_proposals(cfg.proposals);
    const GridSpec spec = parse_grid(cfg.iou_grid);
    const auto grid = eval::iou_grid(spec.lo, spec.hi, spec.step);

    const auto curve = eval::recall_curve(corpus, props, grid, cfg.top_k);
    const std::vector<double> headline = {0.5, 0.7};
    const auto summary = eval::recall_curve(corpus, props, headline, cfg.top_k);

    std::ofstream csv(cfg.out, std::ios::trunc);
    if (!csv) throw Error(ErrorCode::kWriteError, "cannot open " + cfg.out);
    eval::write_curve_csv(curve, csv);
    csv.flush();
    if (!csv) throw Error(ErrorCode::kWriteError, "failed writing " + cfg.out);

    out << fmt::format("recall@0.5={:.4f} recall@0.7={:.4f}\n", summary.recall[0], summary.recall[1]);
    return 0;
}

// -----------------------------------------------------------------------------
// bench
// -----------------------------------------------------------------------------

int cmd_bench(const RunConfig& cfg, std::ostream& out) {
    require(!cfg.features.empty(), "--features is required");
    require(cfg.repeats >= 1, "--repeats must be >= 1");
    const auto files = collect_feature_files(cfg.features);
    require(!files.empty(), "no feature files found");

    std::vector<FeatureStack> stacks;
    stacks.reserve(files.size());
    for (const auto& f : files) stacks.push_back(io::load_feature_stack(f));

    // Timing stays on this thread regardless of --jobs.
    const auto report = eval::bench(stacks, cfg.pipeline, cfg.repeats);
    if (cfg.out.empty()) {
        eval::write_bench_csv(report, out);
        return 0;
    }
    std::ofstream csv(cfg.out, std::ios::trunc);
    if (!csv) throw Error(ErrorCode::kWriteError, "cannot open " + cfg.out);
    eval::write_bench_csv(report, csv);
    csv.flush();
    if (!csv) throw Error(ErrorCode::kWriteError, "failed writing " + cfg.out);
    out << fmt::format("bench: {} image(s), mean {:.1f} proposals, mean {:.0f} ns\n", report.images,
                       report.mean_proposals, report.mean_gen_time_ns);
    return 0;
}

// -----------------------------------------------------------------------------
// synth
// -----------------------------------------------------------------------------

struct SynthArgs {
    std::string out_dir;
    int count = 10;
    std::uint64_t seed = 0;
    int image_w = 256;
    int image_h = 256;
    double stride = 8.0;
    double offset = 0.0;
    int channels = 4;
    int objects = 3;
    double noise = 0.0;
    int blob_min = 2;
    int blob_max = 5;
};

/// splitmix64 step; spreads consecutive image indices over the seed space.
std::uint64_t mix_seed(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

int cmd_synth(const SynthArgs& args, std::ostream& out) {
    require(!args.out_dir.empty(), "--out is required");
    require(args.count >= 0, "--count must be >= 0");
    std::filesystem::create_directories(args.out_dir);

    eval::SynthParams params;
    params.geometry = {args.stride, args.stride, args.offset, args.offset, args.image_w, args.image_h};
    params.channels = args.channels;
    params.n_objects = args.objects;
    params.noise_sigma = args.noise;
    params.blob_min_cells = args.blob_min;
    params.blob_max_cells = args.blob_max;

    AnnotationSet corpus;
    for (int i = 0; i < args.count; ++i) {
        params.seed = mix_seed(args.seed + static_cast<std::uint64_t>(i));
        const auto scene = eval::synth_scene(params);
        const std::string id = fmt::format("scene_{:04d}", i);
        io::save_feature_stack(scene.stack, std::filesystem::path(args.out_dir) / (id + ".rfm"));
        corpus.records.push_back({id, scene.gt_boxes});
    }
    io::save_annotations(corpus, std::filesystem::path(args.out_dir) / "annotations.jsonl");
    out << fmt::format("wrote {} scene(s) to {}\n", args.count, args.out_dir);
    return 0;
}

}  // namespace

std::vector<std::filesystem::path> collect_feature_files(const std::vector<std::string>& inputs) {
    std::vector<std::filesystem::path> files;
    for (const auto& input : inputs) {
        const std::filesystem::path p(input);
        if (std::filesystem::is_directory(p)) {
            std::vector<std::filesystem::path> found;
            for (const auto& entry : std::filesystem::directory_iterator(p)) {
                if (entry.is_regular_file() && entry.path().extension() == ".rfm") {
                    found.push_back(entry.path());
                }
            }
            std::sort(found.begin(), found.end());
            files.insert(files.end(), found.begin(), found.end());
        } else {
            files.push_back(p);
        }
    }
    return files;
}

void configure_logging() {
    auto logger = spdlog::get("relief");
    if (!logger) {
        logger = spdlog::stderr_logger_mt("relief");
        spdlog::set_default_logger(logger);
    }
    const char* env = std::getenv("RELIEF_LOG");
    const std::string level = env ? env : "error";
    if (level == "debug") {
        spdlog::set_level(spdlog::level::debug);
    } else if (level == "info") {
        spdlog::set_level(spdlog::level::info);
    } else {
        spdlog::set_level(spdlog::level::err);
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    configure_logging();

    CLI::App app{"Region proposals from convolutional feature maps"};
    app.require_subcommand(1);

    CommonArgs gen_common;
    CLI::App* gen = app.add_subcommand("generate", "Generate proposals for RFM1 feature stacks");
    add_common(gen, gen_common);
    FlagSet gen_flags(gen);
    add_features_flag(gen_flags);
    add_out_flag(gen_flags, "Proposal JSON-lines output");
    add_pipeline_flags(gen_flags);
    add_refine_flags(gen_flags);
    gen_flags.option<int>("--jobs", "Images processed in parallel",
                          [](RunConfig& c, int v) { c.jobs = v; });

    CommonArgs eval_common;
    CLI::App* ev = app.add_subcommand("eval", "Recall-to-IoU curve of proposals against annotations");
    add_common(ev, eval_common);
    FlagSet eval_flags(ev);
    eval_flags.option<std::string>("--proposals", "Proposal JSON lines",
                                   [](RunConfig& c, const std::string& v) { c.proposals = v; });
    eval_flags.option<std::string>("--annotations", "Annotation JSON lines",
                                   [](RunConfig& c, const std::string& v) { c.annotations = v; });
    eval_flags.option<std::string>("--iou-grid", "Thresholds as lo:hi:step (default 0.5:1.0:0.05)",
                                   [](RunConfig& c, const std::string& v) { c.iou_grid = v; });
    eval_flags.option<std::size_t>("--top-k", "Use only the first k proposals per image",
                                   [](RunConfig& c, std::size_t v) { c.top_k = v; });
    add_out_flag(eval_flags, "Recall curve CSV output");

    CommonArgs bench_common;
    CLI::App* be = app.add_subcommand("bench", "Time proposal generation");
    add_common(be, bench_common);
    FlagSet bench_flags(be);
    add_features_flag(bench_flags);
    add_out_flag(bench_flags, "Bench CSV output (stdout when omitted)");
    add_pipeline_flags(bench_flags);
    bench_flags.option<int>("--repeats", "Timed runs per stack (default 5)",
                            [](RunConfig& c, int v) { c.repeats = v; });

    SynthArgs synth_args;
    CLI::App* sy = app.add_subcommand("synth", "Write a synthetic corpus of feature stacks and annotations");
    sy->add_option("--out", synth_args.out_dir, "Output directory")->required();
    sy->add_option("--count", synth_args.count, "Number of scenes");
    sy->add_option("--seed", synth_args.seed, "Corpus seed");
    sy->add_option("--image-w", synth_args.image_w, "Image width in px");
    sy->add_option("--image-h", synth_args.image_h, "Image height in px");
    sy->add_option("--stride", synth_args.stride, "Pixels per feature cell");
    sy->add_option("--offset", synth_args.offset, "Pixel offset of cell (0,0)");
    sy->add_option("--channels", synth_args.channels, "Feature channels");
    sy->add_option("--objects", synth_args.objects, "Objects per scene");
    sy->add_option("--noise", synth_args.noise, "Gaussian noise sigma");
    sy->add_option("--blob-min", synth_args.blob_min, "Minimum object side in cells");
    sy->add_option("--blob-max", synth_args.blob_max, "Maximum object side in cells");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
            return 0;
        }
        err << "error: " << e.what() << '\n';
        return 1;
    }

    try {
        if (gen->parsed()) return cmd_generate(resolve(gen_common, gen_flags), out);
        if (ev->parsed()) return cmd_eval(resolve(eval_common, eval_flags), out);
        if (be->parsed()) return cmd_bench(resolve(bench_common, bench_flags), out);
        if (sy->parsed()) return cmd_synth(synth_args, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

}  // namespace relief::cli
