#include "kdeplan/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <sstream>
#include <thread>

namespace kdeplan {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

TrialRecord run_sample_speed(const ExperimentSpec& spec, std::size_t trial, char arm,
                             RandomStream& rng) {
    TrialRecord rec;
    rec.trial_id = trial;
    rec.arm = arm;
    rec.seed = rng.seed();
    const auto t0 = Clock::now();
    if (arm == 'B') {
        const Workspace& free1 = spec.scenario->workspace_free1;
        const Box bbox = free1.bounding_box();
        std::uint64_t attempts = 0;
        std::size_t feasible = 0;
        while (feasible < spec.feasible_target) {
            ++attempts;
            if (contains(free1, bbox.sample(rng))) ++feasible;
        }
        rec.samples = attempts;
        rec.feasible = feasible;
    } else {
        const SamplerSpec arm_spec = kde_arm(*spec.prepared, spec.proposed_mode);
        const StateSampler sampler(arm_spec);
        const SampleBatch batch = sampler.batch(spec.feasible_target, rng);
        rec.samples = batch.attempts;
        rec.feasible = batch.points.size();
    }
    rec.time_ms = ms_since(t0);
    return rec;
}

TrialRecord run_planning(const ExperimentSpec& spec, std::size_t trial, char arm,
                         RandomStream& rng) {
    TrialRecord rec;
    rec.trial_id = trial;
    rec.arm = arm;
    rec.seed = rng.seed();

    SamplerSpec sampler = arm == 'B' ? baseline_arm(*spec.scenario)
                          : spec.proposed_mode == SampleMode::mixed
                              ? mixed_arm(*spec.prepared, *spec.scenario, spec.lambda)
                              : kde_arm(*spec.prepared, spec.proposed_mode);

    const Termination term =
        spec.kind == ExperimentKind::first_feasible
            ? terminate_first_feasible(spec.max_samples, spec.max_seconds)
            : terminate_cost_below(spec.cost_threshold, spec.max_samples, spec.max_seconds);

    const auto t0 = Clock::now();
    const PlanResult res = plan(*spec.scenario, sampler, term, rng);
    rec.time_ms = ms_since(t0);
    rec.samples = res.samples_drawn;
    rec.feasible = res.feasible_samples;
    rec.nodes = res.nodes;
    rec.cost = res.cost;
    rec.ok = res.path.has_value() &&
             (spec.kind != ExperimentKind::cost_threshold || res.cost < spec.cost_threshold);
    return rec;
}

}  // namespace

std::vector<TrialRecord> run(const ExperimentSpec& spec) {
    if (!spec.scenario) throw ContractViolation("experiment needs a scenario");
    if (spec.trials == 0) throw ContractViolation("experiment needs at least one trial");
    const bool needs_prepared = true;  // the R arm always samples the prepared model
    if (needs_prepared && !spec.prepared)
        throw ContractViolation("experiment needs a prepared sampler for the R arm");

    const std::size_t task_count = spec.trials * 2;
    std::vector<TrialRecord> records(task_count);

    const auto worker_body = [&](std::size_t task) {
        const std::size_t trial = task / 2;
        const char arm = task % 2 == 0 ? 'B' : 'R';
        const std::uint64_t trial_seed = spec.base_seed + trial;
        RandomStream rng(RandomStream::derive(trial_seed, arm == 'B' ? 0 : 1));
        records[task] = spec.kind == ExperimentKind::sample_speed
                            ? run_sample_speed(spec, trial, arm, rng)
                            : run_planning(spec, trial, arm, rng);
    };

    const int jobs = std::max(1, spec.parallelism);
    if (jobs == 1) {
        for (std::size_t t = 0; t < task_count; ++t) worker_body(t);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(jobs);
        for (int j = 0; j < jobs; ++j)
            pool.emplace_back([&] {
                for (;;) {
                    const std::size_t task = next.fetch_add(1);
                    if (task >= task_count) return;
                    worker_body(task);
                }
            });
        for (auto& th : pool) th.join();
    }

    std::size_t failures = 0;
    for (const auto& r : records)
        if (!r.ok) ++failures;
    if (failures * 10 > task_count) {
        std::ostringstream msg;
        msg << failures << " of " << task_count
            << " trials failed (no solution within the caps); raise max_samples or relax "
               "the threshold";
        throw Error(msg.str());
    }
    return records;
}

double lower_median(std::vector<double> values) {
    if (values.empty()) throw ContractViolation("median of an empty sample");
    std::sort(values.begin(), values.end());
    return values[(values.size() - 1) / 2];
}

double delta_pct(double baseline, double proposed) {
    if (baseline == 0.0) return proposed == 0.0 ? 0.0 : std::numeric_limits<double>::quiet_NaN();
    return (proposed - baseline) / baseline * 100.0;
}

namespace {

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double population_std(const std::vector<double>& v) {
    const double m = mean_of(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(v.size()));
}

}  // namespace

std::vector<StatRow> aggregate(const std::vector<TrialRecord>& records) {
    std::vector<double> metric_b[4], metric_r[4];
    const char* names[4] = {"samples", "time_ms", "nodes", "cost"};
    bool planning = false;
    for (const auto& rec : records) {
        if (!rec.ok) continue;
        auto& slot = rec.arm == 'B' ? metric_b : metric_r;
        slot[0].push_back(static_cast<double>(rec.samples));
        slot[1].push_back(rec.time_ms);
        if (rec.nodes > 0) {
            planning = true;
            slot[2].push_back(static_cast<double>(rec.nodes));
            slot[3].push_back(rec.cost);
        }
    }
    if (metric_b[0].empty() || metric_r[0].empty())
        throw ContractViolation("aggregate needs successful records in both arms");

    std::vector<StatRow> rows;
    const int metric_count = planning ? 4 : 2;
    for (int m = 0; m < metric_count; ++m) {
        StatRow row;
        row.metric = names[m];
        row.b_mean = mean_of(metric_b[m]);
        row.b_median = lower_median(metric_b[m]);
        row.b_std = population_std(metric_b[m]);
        row.r_mean = mean_of(metric_r[m]);
        row.r_median = lower_median(metric_r[m]);
        row.r_std = population_std(metric_r[m]);
        row.delta_mean_pct = delta_pct(row.b_mean, row.r_mean);
        row.delta_median_pct = delta_pct(row.b_median, row.r_median);
        row.delta_std_pct = delta_pct(row.b_std, row.r_std);
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace kdeplan
