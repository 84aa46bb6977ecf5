#pragma once

#include <string>

#include "kdeplan/planner.hpp"

namespace kdeplan {

// Per-trial planner metrics for one arm of an experiment.
struct TrialRecord {
    std::size_t trial_id = 0;
    char arm = 'B';  // 'B' baseline, 'R' rejection-free
    std::uint64_t samples = 0;
    std::uint64_t feasible = 0;
    std::size_t nodes = 0;
    double cost = std::numeric_limits<double>::quiet_NaN();
    double time_ms = 0.0;
    std::uint64_t seed = 0;
    bool ok = true;
};

enum class ExperimentKind { sample_speed, first_feasible, cost_threshold };

struct ExperimentSpec {
    std::shared_ptr<const Scenario> scenario;
    std::shared_ptr<const PreparedSampler> prepared;
    ExperimentKind kind = ExperimentKind::sample_speed;
    std::size_t feasible_target = 2500;  // sample_speed: m
    double cost_threshold = 0.0;         // cost_threshold: c*
    std::size_t trials = 1;
    std::uint64_t base_seed = 1;
    int parallelism = 1;
    SampleMode proposed_mode = SampleMode::kde_uniform;
    std::uint64_t max_samples = 200000;  // planner cap per trial
    double max_seconds = 0.0;            // optional wall-time cap per trial
    double lambda = 0.9;                 // mixed proposed_mode only
};

// Runs both arms for every trial. Trial i uses seed base_seed + i; each arm
// derives an independent stream from it, so results are bit-reproducible and
// independent of the parallelism degree (wall times excepted). Individual
// trial failures are recorded; more than 10% failures aborts.
std::vector<TrialRecord> run(const ExperimentSpec& spec);

// One aggregated table row per metric: B and R mean / median (lower-middle
// convention) / population std plus the per-cell relative change in percent.
struct StatRow {
    std::string metric;
    double b_mean = 0.0, b_median = 0.0, b_std = 0.0;
    double r_mean = 0.0, r_median = 0.0, r_std = 0.0;
    double delta_mean_pct = 0.0, delta_median_pct = 0.0, delta_std_pct = 0.0;
};

std::vector<StatRow> aggregate(const std::vector<TrialRecord>& records);

// Lower-middle median of an unsorted sample.
double lower_median(std::vector<double> values);

double delta_pct(double baseline, double proposed);

}  // namespace kdeplan
