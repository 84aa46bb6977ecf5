#pragma once

#include <string>

#include "kdeplan/pipeline.hpp"

namespace kdeplan {

// Built-in 2D toy: 1500 historical states from two bivariate normals
// (means (0,0) and (20,10), covariances diag(10,20) and diag(45,35); equal
// split by default, overridable), a pentagon boundary imposed as the changed
// free space, H = 2I and the Epanechnikov kernel.
PointSet toy_dataset(std::uint64_t seed, std::size_t per_cluster = 750);
Scenario toy_scenario(std::uint64_t seed, std::size_t per_cluster = 750);

struct ToyFiles {
    std::string scenario_path;
    std::string data_path;
};

// Writes toy_data.csv and toy_scenario.json into out_dir; deterministic in
// the seed, byte for byte.
ToyFiles write_toy_files(std::uint64_t seed, const std::string& out_dir,
                         std::size_t per_cluster = 750);

// Toy planning analog: the toy boundary plus one obstacle away from the
// start-goal corridor, so the baseline wastes effort the proposed sampler
// does not.
Scenario toy_bench_scenario(std::uint64_t seed);

// Corridor-world sample-speed scenario with exact free fraction
// 410/1600 = 0.25625 of its bounding box.
Scenario blocked_scenario(std::uint64_t seed);
double blocked_scenario_free_fraction();

// Synthetic 3D inspection analog: a tank volume with a central pillar and a
// corner column, historical states on circular sweeps around the pillar.
Scenario tank_scenario(std::uint64_t seed);

// 1D two-cluster data set for the approximate-uniformity comparison.
PointSet two_cluster_1d(std::uint64_t seed);

}  // namespace kdeplan
