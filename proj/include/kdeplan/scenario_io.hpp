#pragma once

#include <string>

#include "kdeplan/bench.hpp"

namespace kdeplan {

// Full-precision formatting (17 significant digits) so written values
// round-trip bit-exactly and downstream percentage recomputation closes.
std::string format_double(double v);

// CSV with header "x,y" or "x,y,z", one state per row.
PointSet load_points_csv(const std::string& path);
void write_points_csv(const std::string& path, const PointSet& ps);

// Strict JSON scenario file: unknown fields are rejected, the schema is
// validated before any computation, and the safety margin is applied on load.
Scenario load_scenario(const std::string& path);
void write_scenario(const Scenario& s, const std::string& path,
                    const std::string& data_file);

bool scenario_equal(const Scenario& a, const Scenario& b);

void write_samples_csv(const std::string& path, const SampleBatch& batch);
void write_sample_meta_json(const std::string& path, const SampleBatch& batch,
                            std::uint64_t seed);

void write_trials_csv(const std::string& path, const std::vector<TrialRecord>& records,
                      bool include_time = true);
void write_summary_json(const std::string& path, const std::vector<StatRow>& rows,
                        const std::vector<TrialRecord>& records);

void write_workspace_json(const std::string& path, const Workspace& w);
void write_prepare_report_json(const std::string& path, const PreparedSampler& p);

void write_path_csv(const std::string& path, const std::vector<Point>& pts);
void write_plan_result_json(const std::string& path, const PlanResult& result);

}  // namespace kdeplan
