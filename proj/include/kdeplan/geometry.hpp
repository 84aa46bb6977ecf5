#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "kdeplan/errors.hpp"
#include "kdeplan/random.hpp"

namespace kdeplan {

// A state in R^p, p in {1,2,3}. Workspaces are 2D/3D; 1D points appear only
// in kernel-density code.
struct Point {
    std::array<double, 3> c{0.0, 0.0, 0.0};
    int dim = 2;

    double& operator[](std::size_t i) { return c[i]; }
    double operator[](std::size_t i) const { return c[i]; }
};

Point make_point(double x);
Point make_point(double x, double y);
Point make_point(double x, double y, double z);

Point operator+(const Point& a, const Point& b);
Point operator-(const Point& a, const Point& b);
bool operator==(const Point& a, const Point& b);
double dot(const Point& a, const Point& b);
double norm(const Point& a);
double distance(const Point& a, const Point& b);

// Ordered collection of same-dimension finite points.
struct PointSet {
    int dim = 2;
    std::vector<Point> points;

    std::size_t size() const { return points.size(); }
};

// Validates finiteness and dimension agreement.
PointSet make_point_set(int dim, std::vector<Point> points);

// Axis-aligned box, used as 3D bounds and as sampling region for baselines.
struct Box {
    Point lo;
    Point hi;
    int dim = 2;

    double measure() const;
    double diagonal() const;
    bool contains(const Point& p) const;
    Box expanded(double r) const;
    Point sample(RandomStream& rng) const;
};

Box make_box(const Point& lo, const Point& hi);

// Simple polygon with optional holes. Outer ring is counter-clockwise,
// holes clockwise; rings are stored open (first vertex not repeated).
struct Region2D {
    std::vector<Point> outer;
    std::vector<std::vector<Point>> holes;

    double area() const;
    Box bounding_box() const;
};

// Validates simplicity, orientation (reorients if needed), hole containment
// and non-degeneracy (area >= 1e-12).
Region2D make_region2d(std::vector<Point> outer,
                       std::vector<std::vector<Point>> holes = {});

// Axis-aligned 3D free space: a bounds box minus box obstacles.
struct Region3D {
    Box bounds;
    std::vector<Box> obstacles;
};

Region3D make_region3d(Box bounds, std::vector<Box> obstacles = {});

// Free-space epoch per the erosion pipeline: free0 = historical, free1 =
// changed/imposed, free2 = eroded.
enum class Epoch { free0, free1, free2 };

// A free space at a named epoch. 2D workspaces are a list of disjoint
// polygon-with-holes parts (scenario input has exactly one; erosion may
// split a part into several). 3D workspaces are a Region3D.
struct Workspace {
    int dimension = 2;
    Epoch epoch = Epoch::free1;
    std::vector<Region2D> parts;  // dimension == 2
    Region3D region3;             // dimension == 3

    Box bounding_box() const;
    double free_measure() const;  // exact area (2D) / volume (3D)
};

Workspace make_workspace(Region2D region, Epoch epoch);
Workspace make_workspace(Region3D region, Epoch epoch);

// Closed-set membership: boundary points count as free.
bool contains(const Workspace& w, const Point& x);

// True iff the closed segment ab stays inside the boundary and never enters
// an obstacle interior. Exact (segment-edge subdivision in 2D, slab clipping
// in 3D); no stepping.
bool segment_free(const Workspace& w, const Point& a, const Point& b);

// Offsets the free space inward by rho: boundary eroded, obstacles dilated
// (Minkowski sum with the radius-rho ball). Corner arcs are approximated by
// 8 chords per quarter arc, oriented so the result never exceeds the exact
// offset free set. Requires epoch free1; returns epoch free2.
// Throws EmptyFreeSpace when nothing remains.
Workspace shrink(const Workspace& w, double rho);

// Same offset operation applied when imposing a safety margin on raw
// geometry: free0 in, free1 out.
Workspace apply_safety_margin(const Workspace& w, double margin);

struct AreaEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::size_t samples = 0;
};

// Monte Carlo estimate of |free(w)| / |bbox|. bbox must cover w.
AreaEstimate area_fraction(const Workspace& w, const Box& bbox, std::size_t n,
                           RandomStream& rng);

}  // namespace kdeplan
