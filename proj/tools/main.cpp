// Command-line front end: scenario ingestion, toy generation, pipeline
// execution, planning and benchmarking.
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "kdeplan/bench.hpp"
#include "kdeplan/planner.hpp"
#include "kdeplan/scenario_io.hpp"
#include "kdeplan/toy.hpp"

namespace fs = std::filesystem;
using namespace kdeplan;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitEmpty = 3;

SampleMode parse_mode(const std::string& s) {
    if (s == "baseline") return SampleMode::baseline_uniform;
    if (s == "biased") return SampleMode::kde_biased;
    if (s == "uniform") return SampleMode::kde_uniform;
    if (s == "mixed") return SampleMode::mixed;
    throw ScenarioError("unknown mode '" + s + "' (expected baseline|biased|uniform|mixed)");
}

struct CommonOpts {
    std::string scenario_path;
    std::string data_override;
    std::string out_dir = ".";
    std::string radius = "";
    std::uint64_t seed = 1;
};

Scenario load(const CommonOpts& opts) {
    Scenario s = load_scenario(opts.scenario_path);
    if (!opts.data_override.empty()) {
        auto data = std::make_shared<PointSet>(load_points_csv(opts.data_override));
        Scenario rebuilt = make_scenario(s.workspace_raw, s.safety_distance, std::move(data),
                                         s.kernel, s.h, s.start, s.goal);
        rebuilt.unit = s.unit;
        rebuilt.radius_choice = s.radius_choice;
        rebuilt.q = s.q;
        rebuilt.truncation = s.truncation;
        rebuilt.planner = s.planner;
        rebuilt.rho_mc_budget = s.rho_mc_budget;
        s = std::move(rebuilt);
    }
    if (opts.radius == "tight") s.radius_choice = RadiusChoice::tight;
    else if (opts.radius == "paper") s.radius_choice = RadiusChoice::paper;
    else if (!opts.radius.empty())
        throw ScenarioError("unknown radius choice '" + opts.radius + "'");
    return s;
}

void add_common(CLI::App* cmd, CommonOpts& opts, bool needs_scenario = true) {
    if (needs_scenario)
        cmd->add_option("--scenario", opts.scenario_path, "scenario JSON file")->required();
    cmd->add_option("--data", opts.data_override, "override the scenario data CSV");
    cmd->add_option("--out", opts.out_dir, "output directory");
    cmd->add_option("--seed", opts.seed, "random seed");
    cmd->add_option("--radius", opts.radius, "erosion radius choice: tight|paper");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"KDE-guided rejection-free sampling and planning toolkit"};
    app.require_subcommand(1);

    CommonOpts toy_opts, prep_opts, sample_opts, plan_opts, bench_opts;
    std::size_t toy_split = 750;
    std::string sample_mode = "uniform", plan_mode = "baseline", bench_mode = "uniform";
    std::size_t sample_m = 1000;
    double lambda = 0.9;
    std::uint64_t plan_budget = 100000;
    double plan_threshold = 0.0;
    std::string bench_experiment = "sample_speed";
    std::size_t bench_trials = 100, bench_m = 2500;
    double bench_threshold = 0.0;
    std::uint64_t bench_max_samples = 200000;
    int jobs = 1;

    auto* toy_cmd = app.add_subcommand("toy", "write the built-in toy scenario and data");
    add_common(toy_cmd, toy_opts, false);
    toy_cmd->add_option("--split", toy_split, "points per mixture component");

    auto* prep_cmd =
        app.add_subcommand("prepare", "erode the free space and truncate the density");
    add_common(prep_cmd, prep_opts);

    auto* sample_cmd = app.add_subcommand("sample", "draw states from the prepared sampler");
    add_common(sample_cmd, sample_opts);
    sample_cmd->add_option("--mode", sample_mode, "baseline|biased|uniform|mixed");
    sample_cmd->add_option("--m", sample_m, "number of samples");
    sample_cmd->add_option("--lambda", lambda, "kde share for mixed mode");

    auto* plan_cmd = app.add_subcommand("plan", "solve the scenario planning problem");
    add_common(plan_cmd, plan_opts);
    plan_cmd->add_option("--mode", plan_mode, "baseline|biased|uniform|mixed");
    plan_cmd->add_option("--budget", plan_budget, "sample cap");
    plan_cmd->add_option("--threshold", plan_threshold,
                         "stop once the solution cost drops below this");
    plan_cmd->add_option("--lambda", lambda, "kde share for mixed mode");

    auto* bench_cmd = app.add_subcommand("bench", "run a seeded two-arm experiment");
    add_common(bench_cmd, bench_opts);
    bench_cmd->add_option("--experiment", bench_experiment,
                          "sample_speed|first_feasible|cost_threshold");
    bench_cmd->add_option("--trials", bench_trials, "trials per arm");
    bench_cmd->add_option("--m", bench_m, "feasible samples per sample_speed trial");
    bench_cmd->add_option("--threshold", bench_threshold, "cost threshold");
    bench_cmd->add_option("--mode", bench_mode, "proposed arm mode: biased|uniform|mixed");
    bench_cmd->add_option("--lambda", lambda, "kde share for mixed mode");
    bench_cmd->add_option("--max-samples", bench_max_samples, "planner cap per trial");
    bench_cmd->add_option("--jobs", jobs, "worker threads");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*toy_cmd) {
            const ToyFiles files = write_toy_files(toy_opts.seed, toy_opts.out_dir, toy_split);
            std::cout << "wrote " << files.scenario_path << " and " << files.data_path << "\n";
            return 0;
        }

        if (*prep_cmd) {
            const Scenario s = load(prep_opts);
            const PreparedSampler p = prepare(s);
            fs::create_directories(prep_opts.out_dir);
            const fs::path out(prep_opts.out_dir);
            write_workspace_json((out / "w2_geometry.json").string(), p.w2);
            write_points_csv((out / "xbar.csv").string(), *p.xbar);
            write_prepare_report_json((out / "prepare_report.json").string(), p);
            std::cout << "rho_radius=" << format_double(p.rho_radius)
                      << " surviving=" << p.xbar->size() << " dropped=" << p.dropped_count
                      << " normalization=" << format_double(p.model.normalization()) << "\n";
            return 0;
        }

        if (*sample_cmd) {
            const Scenario s = load(sample_opts);
            const SampleMode mode = parse_mode(sample_mode);
            SamplerSpec spec;
            if (mode == SampleMode::baseline_uniform) {
                spec = baseline_arm(s);
            } else {
                const PreparedSampler p = prepare(s);
                spec = mode == SampleMode::mixed ? mixed_arm(p, s, lambda) : kde_arm(p, mode);
            }
            RandomStream rng(sample_opts.seed);
            const SampleBatch batch = generate(spec, sample_m, rng);
            fs::create_directories(sample_opts.out_dir);
            const fs::path out(sample_opts.out_dir);
            write_samples_csv((out / "samples.csv").string(), batch);
            write_sample_meta_json((out / "samples_meta.json").string(), batch,
                                   sample_opts.seed);
            std::cout << "wrote " << batch.points.size() << " samples ("
                      << batch.attempts << " attempts)\n";
            return 0;
        }

        if (*plan_cmd) {
            const Scenario s = load(plan_opts);
            const SampleMode mode = parse_mode(plan_mode);
            SamplerSpec spec;
            if (mode == SampleMode::baseline_uniform) {
                spec = baseline_arm(s);
            } else {
                const PreparedSampler p = prepare(s);
                spec = mode == SampleMode::mixed ? mixed_arm(p, s, lambda) : kde_arm(p, mode);
            }
            const Termination term = plan_threshold > 0.0
                                         ? terminate_cost_below(plan_threshold, plan_budget)
                                         : terminate_first_feasible(plan_budget);
            RandomStream rng(plan_opts.seed);
            const PlanResult res = plan(s, spec, term, rng);
            fs::create_directories(plan_opts.out_dir);
            const fs::path out(plan_opts.out_dir);
            write_path_csv((out / "path.csv").string(),
                           res.path.value_or(std::vector<Point>{}));
            write_plan_result_json((out / "plan_result.json").string(), res);
            if (res.path)
                std::cout << "cost=" << format_double(res.cost) << " samples="
                          << res.samples_drawn << " nodes=" << res.nodes << "\n";
            else
                std::cout << "no path within the caps (samples=" << res.samples_drawn << ")\n";
            return 0;
        }

        if (*bench_cmd) {
            auto scenario = std::make_shared<const Scenario>(load(bench_opts));
            ExperimentSpec spec;
            spec.scenario = scenario;
            spec.prepared = std::make_shared<const PreparedSampler>(prepare(*scenario));
            if (bench_experiment == "sample_speed") spec.kind = ExperimentKind::sample_speed;
            else if (bench_experiment == "first_feasible")
                spec.kind = ExperimentKind::first_feasible;
            else if (bench_experiment == "cost_threshold")
                spec.kind = ExperimentKind::cost_threshold;
            else
                throw ScenarioError("unknown experiment '" + bench_experiment + "'");
            spec.feasible_target = bench_m;
            spec.cost_threshold = bench_threshold;
            spec.trials = bench_trials;
            spec.base_seed = bench_opts.seed;
            spec.parallelism = jobs;
            spec.proposed_mode = parse_mode(bench_mode);
            spec.lambda = lambda;
            spec.max_samples = bench_max_samples;
            if (spec.kind == ExperimentKind::cost_threshold && bench_threshold <= 0.0)
                throw ScenarioError("cost_threshold experiment needs --threshold");

            const std::vector<TrialRecord> records = run(spec);
            const std::vector<StatRow> rows = aggregate(records);
            fs::create_directories(bench_opts.out_dir);
            const fs::path out(bench_opts.out_dir);
            write_trials_csv((out / "trials.csv").string(), records);
            write_summary_json((out / "summary.json").string(), rows, records);
            for (const auto& row : rows)
                std::cout << row.metric << ": B mean " << row.b_mean << ", R mean "
                          << row.r_mean << ", delta% " << row.delta_mean_pct << "\n";
            return 0;
        }
    } catch (const EmptyFreeSpace& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitEmpty;
    } catch (const EmptyDataset& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitEmpty;
    } catch (const ScenarioError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const ContractViolation& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
