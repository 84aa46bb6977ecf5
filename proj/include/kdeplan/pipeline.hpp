#pragma once

#include <memory>
#include <string>

#include "kdeplan/sampler.hpp"

namespace kdeplan {

enum class RadiusChoice { tight, paper };
enum class TruncationMode { renormalize, refit };

// RRT* parameters; zero means "derive the conventional default from the
// planning bounding box" (see resolve_planner_params in planner.hpp).
struct PlannerParams {
    double eta = 0.0;
    double gamma = 0.0;
    double goal_tolerance = 0.0;
    double goal_bias = 0.05;
};

// A full problem instance: changed free space, historical states, kernel
// configuration and the planning query.
struct Scenario {
    int dimension = 2;
    std::string unit = "m";
    Workspace workspace_raw;    // geometry as loaded (epoch free0)
    Workspace workspace_free1;  // after the safety margin (epoch free1)
    double safety_distance = 0.0;
    std::shared_ptr<const PointSet> data;
    KernelKind kernel = KernelKind::epanechnikov;
    std::vector<double> h;  // row-major p x p bandwidth entries
    Point start;
    Point goal;
    RadiusChoice radius_choice = RadiusChoice::tight;
    NormOrder q = NormOrder::l2;
    TruncationMode truncation = TruncationMode::renormalize;
    PlannerParams planner;
    std::size_t rho_mc_budget = 100000;
};

// Applies the safety margin, validates invariants (H SPD, nonempty data,
// start and goal inside the resulting free1 space) and fills both workspace
// fields.
Scenario make_scenario(Workspace raw_free0, double safety_distance,
                       std::shared_ptr<const PointSet> data, KernelKind kernel,
                       std::vector<double> h, Point start, Point goal);

// Output of the rejection-free construction: the eroded space, the surviving
// data subset and the truncated model ready for sampling.
struct PreparedSampler {
    Workspace w2;
    std::shared_ptr<const PointSet> xbar;
    KdeModel model;
    double rho_radius = 0.0;
    std::size_t dropped_count = 0;
    std::shared_ptr<const Workspace> free1;  // space the guarantee refers to
};

// Erode free1 by the kernel-and-bandwidth radius, filter the data and
// truncate the density. Pure: identical scenarios give identical samplers.
PreparedSampler prepare(const Scenario& s);

struct ValidationReport {
    std::size_t violations = 0;
    std::size_t probes_per_mode = 0;
    double occupied_fraction_biased = 0.0;
    double occupied_fraction_uniform = 0.0;
    double cv_biased = 0.0;   // occupancy-count coefficient of variation
    double cv_uniform = 0.0;
};

// Draws n_probe samples in each kde mode and checks every one against free1.
// Throws GuaranteeViolation (carrying the first offending point and the
// violation count) if any sample escapes.
ValidationReport validate(const PreparedSampler& p, std::size_t n_probe, RandomStream& rng);

}  // namespace kdeplan
