#include <doctest.h>

#include <cmath>

#include "kdeplan/geometry.hpp"
#include "oracles.hpp"

using namespace kdeplan;

namespace {

Workspace unit_square_10(Epoch e = Epoch::free1) {
    return make_workspace(make_region2d({make_point(0, 0), make_point(10, 0),
                                         make_point(10, 10), make_point(0, 10)}),
                          e);
}

Workspace square_with_hole(Epoch e = Epoch::free1) {
    return make_workspace(
        make_region2d({make_point(0, 0), make_point(10, 0), make_point(10, 10), make_point(0, 10)},
                      {{make_point(4, 4), make_point(6, 4), make_point(6, 6), make_point(4, 6)}}),
        e);
}

// Toy boundary polygon used across the suite.
Region2D toy_polygon() {
    return make_region2d({make_point(-10, -10), make_point(22, 3), make_point(30, 27),
                          make_point(-12, 30), make_point(-20, 0)});
}

}  // namespace

TEST_CASE("contains: interior, hole and toy polygon") {
    CHECK(contains(unit_square_10(), make_point(5, 5)));
    CHECK_FALSE(contains(square_with_hole(), make_point(5, 5)));

    const Workspace toy = make_workspace(toy_polygon(), Epoch::free1);
    CHECK(contains(toy, make_point(0, 0)));
    CHECK(oracles::ray_cast_region(make_point(0, 0), toy.parts.front()));
}

TEST_CASE("contains: boundary points are free (closed free space)") {
    const Workspace w = square_with_hole();
    CHECK(contains(w, make_point(0, 5)));     // outer edge
    CHECK(contains(w, make_point(0, 0)));     // outer vertex
    CHECK(contains(w, make_point(4, 5)));     // hole edge
    CHECK(contains(w, make_point(4, 4)));     // hole vertex
    CHECK_FALSE(contains(w, make_point(5, 5.999)));
    CHECK_FALSE(contains(w, make_point(-1e-9, 5)));
}

TEST_CASE("contains: dimension mismatch is a contract violation") {
    CHECK_THROWS_AS(contains(unit_square_10(), make_point(1, 2, 3)), ContractViolation);
}

TEST_CASE("contains agrees with ray-casting oracle on random points") {
    const Region2D toy = toy_polygon();
    const Workspace w = make_workspace(toy, Epoch::free1);
    const Workspace wh = square_with_hole();
    RandomStream rng(42);
    for (int i = 0; i < 10000; ++i) {
        const Point p = make_point(rng.uniform(-25, 35), rng.uniform(-15, 35));
        CHECK(contains(w, p) == oracles::ray_cast_region(p, toy));
        const Point q = make_point(rng.uniform(-1, 11), rng.uniform(-1, 11));
        CHECK(contains(wh, q) == oracles::ray_cast_region(q, wh.parts.front()));
    }
}

TEST_CASE("segment_free: 2D hole crossing") {
    const Workspace w = square_with_hole();
    CHECK_FALSE(segment_free(w, make_point(0, 5), make_point(10, 5)));
    CHECK(segment_free(w, make_point(0, 1), make_point(10, 1)));
    // Leaving the boundary is not free.
    CHECK_FALSE(segment_free(unit_square_10(), make_point(5, 5), make_point(15, 5)));
    // Running along an edge stays in the closed free set.
    CHECK(segment_free(unit_square_10(), make_point(0, 0), make_point(10, 0)));
}

TEST_CASE("segment_free implies endpoint containment") {
    const Workspace w = square_with_hole();
    RandomStream rng(7);
    for (int i = 0; i < 2000; ++i) {
        const Point a = make_point(rng.uniform(-2, 12), rng.uniform(-2, 12));
        const Point b = make_point(rng.uniform(-2, 12), rng.uniform(-2, 12));
        if (segment_free(w, a, b)) {
            CHECK(contains(w, a));
            CHECK(contains(w, b));
            CHECK(oracles::stepped_segment_free(w, a, b, 512));
        }
    }
}

TEST_CASE("segment_free: 3D obstacle clipping") {
    const Box bounds = make_box(make_point(0, 0, 0), make_point(1, 1, 1));
    const Box obstacle = make_box(make_point(0.4, 0.4, 0.4), make_point(0.6, 0.6, 0.6));
    const Workspace w = make_workspace(make_region3d(bounds, {obstacle}), Epoch::free1);

    const Point a = make_point(0, 0, 0), b = make_point(1, 1, 1);
    CHECK_FALSE(segment_free(w, a, b));
    CHECK(oracles::box_clip_overlap(obstacle, a, b) > 0.0);

    // Past the obstacle on one side.
    CHECK(segment_free(w, make_point(0, 0, 0), make_point(1, 0, 0)));
    // Touching a face is allowed (closed free space).
    CHECK(segment_free(w, make_point(0.4, 0, 0.5), make_point(0.4, 1, 0.5)));
    // Leaving the bounds is not.
    CHECK_FALSE(segment_free(w, make_point(0.5, 0.5, 0.9), make_point(0.5, 0.5, 1.1)));
}

TEST_CASE("segment_free agrees with stepping oracle in 3D") {
    const Workspace w = make_workspace(
        make_region3d(make_box(make_point(0, 0, 0), make_point(4, 4, 2)),
                      {make_box(make_point(1, 1, 0), make_point(2, 2, 2)),
                       make_box(make_point(3, 0, 0.5), make_point(4, 2, 1.5))}),
        Epoch::free1);
    RandomStream rng(11);
    for (int i = 0; i < 2000; ++i) {
        const Point a = make_point(rng.uniform(0, 4), rng.uniform(0, 4), rng.uniform(0, 2));
        const Point b = make_point(rng.uniform(0, 4), rng.uniform(0, 4), rng.uniform(0, 2));
        // The stepping oracle can miss shallow clips; only check the
        // direction where it is sound.
        if (segment_free(w, a, b)) CHECK(oracles::stepped_segment_free(w, a, b, 512));
        if (!oracles::stepped_segment_free(w, a, b, 512)) CHECK_FALSE(segment_free(w, a, b));
    }
}

TEST_CASE("shrink: inward offset of a convex boundary is exact") {
    const Workspace w2 = shrink(unit_square_10(), 1.0);
    REQUIRE(w2.parts.size() == 1);
    const Region2D& r = w2.parts.front();
    REQUIRE(r.outer.size() == 4);
    const Box bb = r.bounding_box();
    CHECK(bb.lo[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(bb.lo[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(bb.hi[0] == doctest::Approx(9.0).epsilon(1e-12));
    CHECK(bb.hi[1] == doctest::Approx(9.0).epsilon(1e-12));
    CHECK(r.area() == doctest::Approx(64.0).epsilon(1e-12));
    CHECK(w2.epoch == Epoch::free2);
}

TEST_CASE("shrink: obstacle dilation is a superset of the exact offset") {
    const Workspace w2 = shrink(square_with_hole(), 0.5);
    REQUIRE(w2.parts.size() == 1);
    // Everything in the dilated hole region must be gone: probe the exact
    // offset square [3.5,6.5]^2.
    RandomStream rng(3);
    for (int i = 0; i < 5000; ++i) {
        const Point p = make_point(rng.uniform(3.5, 6.5), rng.uniform(3.5, 6.5));
        CHECK_FALSE(contains(w2, p));
    }
}

TEST_CASE("shrink: over-erosion raises EmptyFreeSpace carrying rho") {
    const Workspace w = make_workspace(
        make_region2d({make_point(0, 0), make_point(4, 0), make_point(4, 4), make_point(0, 4)}),
        Epoch::free1);
    try {
        shrink(w, 2.1);
        FAIL("expected EmptyFreeSpace");
    } catch (const EmptyFreeSpace& e) {
        CHECK(e.rho == doctest::Approx(2.1));
    }
}

TEST_CASE("shrink: rho zero is the identity up to the epoch tag") {
    const Workspace w = square_with_hole();
    const Workspace w2 = shrink(w, 0.0);
    CHECK(w2.epoch == Epoch::free2);
    REQUIRE(w2.parts.size() == 1);
    CHECK(w2.parts.front().outer == w.parts.front().outer);
    CHECK(w2.parts.front().holes == w.parts.front().holes);
}

TEST_CASE("shrink: every eroded point keeps a rho clearance (64 directions)") {
    const double rho = 1.25;
    const Workspace toy =
        make_workspace(make_region2d(toy_polygon().outer,
                                     {{make_point(0, 10), make_point(6, 10), make_point(6, 16),
                                       make_point(0, 16)}}),
                       Epoch::free1);
    const Workspace w2 = shrink(toy, rho);
    RandomStream rng(5);
    const Box bb = w2.bounding_box();
    int tested = 0;
    while (tested < 300) {
        const Point p = bb.sample(rng);
        if (!contains(w2, p)) continue;
        ++tested;
        CHECK(contains(toy, p));
        for (int k = 0; k < 64; ++k) {
            const double ang = 2.0 * M_PI * k / 64.0;
            const Point q = make_point(p[0] + rho * std::cos(ang), p[1] + rho * std::sin(ang));
            CHECK(contains(toy, q));
        }
    }
}

TEST_CASE("shrink: 3D bounds inset and obstacle expansion") {
    const Workspace w = make_workspace(
        make_region3d(make_box(make_point(0, 0, 0), make_point(4, 4, 2)),
                      {make_box(make_point(1, 1, 0.5), make_point(2, 2, 1.5))}),
        Epoch::free1);
    const Workspace w2 = shrink(w, 0.25);
    CHECK(w2.region3.bounds.lo[0] == doctest::Approx(0.25));
    CHECK(w2.region3.bounds.hi[2] == doctest::Approx(1.75));
    REQUIRE(w2.region3.obstacles.size() == 1);
    CHECK(w2.region3.obstacles[0].lo[0] == doctest::Approx(0.75));
    CHECK(w2.region3.obstacles[0].hi[1] == doctest::Approx(2.25));

    RandomStream rng(9);
    int tested = 0;
    while (tested < 300) {
        const Point p = w2.region3.bounds.sample(rng);
        if (!contains(w2, p)) continue;
        ++tested;
        for (int k = 0; k < 64; ++k) {
            RandomStream dir_rng(1000 + k);
            Point d = make_point(rng.normal(), rng.normal(), rng.normal());
            const double n = norm(d);
            Point q = p;
            for (int c = 0; c < 3; ++c) q.c[c] += 0.25 * d[c] / n;
            CHECK(contains(w, q));
        }
    }
}

TEST_CASE("area_fraction: trivial and half-blocked regions") {
    RandomStream rng(123);
    const Box bb = make_box(make_point(0, 0), make_point(10, 10));
    const auto full = area_fraction(unit_square_10(), bb, 20000, rng);
    CHECK(full.value == doctest::Approx(1.0));

    const Workspace half = make_workspace(
        make_region2d({make_point(0, 0), make_point(10, 0), make_point(10, 10), make_point(0, 10)},
                      {{make_point(0.0001, 0.0001), make_point(4.9999, 0.0001),
                        make_point(4.9999, 9.9999), make_point(0.0001, 9.9999)}}),
        Epoch::free1);
    const auto est = area_fraction(half, bb, 100000, rng);
    CHECK(std::abs(est.value - 0.5) <= 3.0 * est.std_error + 1e-4);
}

TEST_CASE("area_fraction: toy polygon matches brute-force MC oracle") {
    // Exact area via the shoelace formula: 1359; bbox area 50 x 40 = 2000.
    const Region2D toy = toy_polygon();
    CHECK(toy.area() == doctest::Approx(1359.0).epsilon(1e-12));
    const double exact_ratio = 1359.0 / 2000.0;

    const Workspace w = make_workspace(toy, Epoch::free1);
    const Box bb = make_box(make_point(-20, -10), make_point(30, 30));
    RandomStream rng(77);
    const auto est = area_fraction(w, bb, 1000000, rng);
    CHECK(std::abs(est.value - exact_ratio) <= 3.0 * est.std_error);

    // Independent oracle pass with ray-casting containment.
    RandomStream rng2(78);
    std::size_t hits = 0;
    const std::size_t n = 1000000;
    for (std::size_t i = 0; i < n; ++i)
        if (oracles::ray_cast_region(bb.sample(rng2), toy)) ++hits;
    const double oracle = static_cast<double>(hits) / n;
    CHECK(std::abs(oracle - exact_ratio) < 3.0 * std::sqrt(exact_ratio * (1 - exact_ratio) / n));
}

TEST_CASE("region validation rejects degenerate and malformed input") {
    CHECK_THROWS_AS(make_region2d({make_point(0, 0), make_point(1, 0)}), ContractViolation);
    CHECK_THROWS_AS(
        make_region2d({make_point(0, 0), make_point(1, 0), make_point(1, 1e-14)}),
        ContractViolation);
    // Self-intersecting bow tie.
    CHECK_THROWS_AS(make_region2d({make_point(0, 0), make_point(2, 2), make_point(2, 0),
                                   make_point(0, 2)}),
                    ContractViolation);
    // Hole outside the outer ring.
    CHECK_THROWS_AS(
        make_region2d({make_point(0, 0), make_point(4, 0), make_point(4, 4), make_point(0, 4)},
                      {{make_point(5, 5), make_point(6, 5), make_point(6, 6), make_point(5, 6)}}),
        ContractViolation);
    CHECK_THROWS_AS(make_box(make_point(0, 0), make_point(0, 1)), ContractViolation);
}

TEST_CASE("workspace free_measure: 2D exact and 3D union volume") {
    CHECK(square_with_hole().free_measure() == doctest::Approx(96.0));
    const Workspace w3 = make_workspace(
        make_region3d(make_box(make_point(0, 0, 0), make_point(4, 4, 2)),
                      {make_box(make_point(0, 0, 0), make_point(2, 2, 2)),
                       make_box(make_point(1, 1, 0), make_point(3, 3, 2))}),
        Epoch::free1);
    // union of the two overlapping slabs: 8 + 8 - 2*1*1*2 = 14
    CHECK(w3.free_measure() == doctest::Approx(32.0 - 14.0));
}
