#include "kdeplan/toy.hpp"

#include <cmath>
#include <filesystem>

#include "kdeplan/scenario_io.hpp"

namespace kdeplan {

namespace {

Region2D toy_boundary() {
    return make_region2d({make_point(-10, -10), make_point(22, 3), make_point(30, 27),
                          make_point(-12, 30), make_point(-20, 0)});
}

PointSet gaussian_cluster_2d(RandomStream& rng, double mx, double my, double var_x,
                             double var_y, std::size_t n) {
    PointSet ps;
    ps.dim = 2;
    const double sx = std::sqrt(var_x), sy = std::sqrt(var_y);
    for (std::size_t i = 0; i < n; ++i)
        ps.points.push_back(make_point(mx + sx * rng.normal(), my + sy * rng.normal()));
    return ps;
}

}  // namespace

PointSet toy_dataset(std::uint64_t seed, std::size_t per_cluster) {
    RandomStream rng(seed);
    PointSet ps = gaussian_cluster_2d(rng, 0.0, 0.0, 10.0, 20.0, per_cluster);
    PointSet second = gaussian_cluster_2d(rng, 20.0, 10.0, 45.0, 35.0, per_cluster);
    ps.points.insert(ps.points.end(), second.points.begin(), second.points.end());
    return ps;
}

Scenario toy_scenario(std::uint64_t seed, std::size_t per_cluster) {
    auto data = std::make_shared<PointSet>(toy_dataset(seed, per_cluster));
    Scenario s = make_scenario(make_workspace(toy_boundary(), Epoch::free0), 0.0,
                               std::move(data), KernelKind::epanechnikov,
                               {2.0, 0.0, 0.0, 2.0}, make_point(0, 0), make_point(20, 10));
    s.unit = "m";
    return s;
}

ToyFiles write_toy_files(std::uint64_t seed, const std::string& out_dir,
                         std::size_t per_cluster) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    const Scenario s = toy_scenario(seed, per_cluster);
    ToyFiles files;
    files.data_path = (fs::path(out_dir) / "toy_data.csv").string();
    files.scenario_path = (fs::path(out_dir) / "toy_scenario.json").string();
    write_points_csv(files.data_path, *s.data);
    write_scenario(s, files.scenario_path, "toy_data.csv");
    return files;
}

Scenario toy_bench_scenario(std::uint64_t seed) {
    auto data = std::make_shared<PointSet>(toy_dataset(seed));
    Region2D boundary = make_region2d(
        toy_boundary().outer,
        {{make_point(-12, 8), make_point(-2, 8), make_point(-2, 26), make_point(-12, 26)}});
    Scenario s = make_scenario(make_workspace(std::move(boundary), Epoch::free0), 0.0,
                               std::move(data), KernelKind::epanechnikov,
                               {2.0, 0.0, 0.0, 2.0}, make_point(0, 0), make_point(20, 10));
    s.unit = "m";
    return s;
}

Scenario blocked_scenario(std::uint64_t seed) {
    Region2D boundary = make_region2d(
        {make_point(0, 0), make_point(40, 0), make_point(40, 40), make_point(0, 40)},
        {
            {make_point(2, 2), make_point(19, 2), make_point(19, 38), make_point(2, 38)},
            {make_point(21, 2), make_point(38, 2), make_point(38, 19), make_point(21, 19)},
            {make_point(21, 21), make_point(38, 21), make_point(38, 38), make_point(21, 38)},
        });

    RandomStream rng(seed);
    PointSet data;
    data.dim = 2;
    for (int i = 0; i < 600; ++i)
        data.points.push_back(
            make_point(20.0 + 0.25 * rng.normal(), rng.uniform(3.0, 37.0)));
    for (int i = 0; i < 400; ++i)
        data.points.push_back(
            make_point(rng.uniform(22.0, 37.0), 20.0 + 0.25 * rng.normal()));

    Scenario s = make_scenario(make_workspace(std::move(boundary), Epoch::free0), 0.0,
                               std::make_shared<PointSet>(std::move(data)), KernelKind::box,
                               {0.09, 0.0, 0.0, 0.09}, make_point(20, 3), make_point(37, 20));
    s.unit = "m";
    return s;
}

double blocked_scenario_free_fraction() {
    // boundary 40x40 minus 17x36 + 17x17 + 17x17 of obstacles
    return (1600.0 - (612.0 + 289.0 + 289.0)) / 1600.0;
}

Scenario tank_scenario(std::uint64_t seed) {
    Region3D tank = make_region3d(
        make_box(make_point(0, 0, 0), make_point(4, 4, 2)),
        {make_box(make_point(1.8, 1.8, 0), make_point(2.2, 2.2, 2)),
         make_box(make_point(0.4, 0.4, 0), make_point(0.8, 0.8, 2))});

    RandomStream rng(seed);
    PointSet data;
    data.dim = 3;
    const double levels[3] = {0.5, 1.0, 1.5};
    for (double z : levels) {
        for (int i = 0; i < 260; ++i) {
            const double a = 2.0 * 3.14159265358979323846 * i / 260.0;
            data.points.push_back(make_point(2.0 + 1.2 * std::cos(a) + 0.05 * rng.normal(),
                                             2.0 + 1.2 * std::sin(a) + 0.05 * rng.normal(),
                                             z + 0.05 * rng.normal()));
        }
    }

    Scenario s = make_scenario(
        make_workspace(std::move(tank), Epoch::free0), 0.0,
        std::make_shared<PointSet>(std::move(data)), KernelKind::epanechnikov,
        {0.02, 0, 0, 0, 0.02, 0, 0, 0, 0.02}, make_point(3.2, 2, 0.5),
        make_point(0.8, 2, 1.5));
    s.unit = "m";
    return s;
}

PointSet two_cluster_1d(std::uint64_t seed) {
    RandomStream rng(seed);
    PointSet ps;
    ps.dim = 1;
    for (int i = 0; i < 700; ++i) ps.points.push_back(make_point(0.6 * rng.normal()));
    for (int i = 0; i < 300; ++i) ps.points.push_back(make_point(7.0 + 1.8 * rng.normal()));
    return ps;
}

}  // namespace kdeplan
