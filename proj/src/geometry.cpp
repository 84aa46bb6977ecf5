#include "kdeplan/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/geometry.hpp>
#include <boost/geometry/geometries/point_xy.hpp>
#include <boost/geometry/geometries/polygon.hpp>
#include <boost/geometry/geometries/multi_polygon.hpp>

namespace kdeplan {

namespace {

constexpr double kDegenerateArea = 1e-12;
constexpr int kChordsPerQuarterArc = 8;

bool finite(const Point& p) {
    for (int i = 0; i < p.dim; ++i)
        if (!std::isfinite(p.c[i])) return false;
    return true;
}

double cross2(double ax, double ay, double bx, double by) { return ax * by - ay * bx; }

// Signed doubled area of an open ring (positive = CCW).
double signed_area2(const std::vector<Point>& ring) {
    double s = 0.0;
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point& a = ring[i];
        const Point& b = ring[(i + 1) % n];
        s += a[0] * b[1] - b[0] * a[1];
    }
    return s;
}

bool on_segment(const Point& p, const Point& a, const Point& b) {
    const double abx = b[0] - a[0], aby = b[1] - a[1];
    const double apx = p[0] - a[0], apy = p[1] - a[1];
    const double cr = cross2(abx, aby, apx, apy);
    const double scale = std::max(1.0, abx * abx + aby * aby);
    if (std::abs(cr) > 1e-12 * scale) return false;
    const double d = apx * abx + apy * aby;
    return d >= -1e-12 * scale && d <= (abx * abx + aby * aby) + 1e-12 * scale;
}

bool on_ring(const Point& p, const std::vector<Point>& ring) {
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i)
        if (on_segment(p, ring[i], ring[(i + 1) % n])) return true;
    return false;
}

// Winding number; nonzero = strictly inside (boundary handled separately).
int winding_number(const Point& p, const std::vector<Point>& ring) {
    int wn = 0;
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point& a = ring[i];
        const Point& b = ring[(i + 1) % n];
        const double is_left = cross2(b[0] - a[0], b[1] - a[1], p[0] - a[0], p[1] - a[1]);
        if (a[1] <= p[1]) {
            if (b[1] > p[1] && is_left > 0) ++wn;
        } else {
            if (b[1] <= p[1] && is_left < 0) --wn;
        }
    }
    return wn;
}

// Closed containment in one polygon-with-holes part.
bool region_contains(const Region2D& r, const Point& p) {
    if (on_ring(p, r.outer)) return true;
    for (const auto& h : r.holes)
        if (on_ring(p, h)) return true;
    if (winding_number(p, r.outer) == 0) return false;
    for (const auto& h : r.holes)
        if (winding_number(p, h) != 0) return false;
    return true;
}

// Parameters t in [0,1] where segment a+t(b-a) meets edge (e0,e1).
void intersection_params(const Point& a, const Point& b, const Point& e0, const Point& e1,
                         std::vector<double>& out) {
    const double dx = b[0] - a[0], dy = b[1] - a[1];
    const double fx = e1[0] - e0[0], fy = e1[1] - e0[1];
    const double wx = e0[0] - a[0], wy = e0[1] - a[1];
    const double denom = cross2(dx, dy, fx, fy);
    const double scale = std::max({1.0, dx * dx + dy * dy, fx * fx + fy * fy});
    if (std::abs(denom) > 1e-14 * scale) {
        const double t = cross2(wx, wy, fx, fy) / denom;
        const double s = cross2(wx, wy, dx, dy) / denom;
        if (t >= 0.0 && t <= 1.0 && s >= 0.0 && s <= 1.0) out.push_back(t);
        return;
    }
    // Parallel: only collinear overlap matters.
    if (std::abs(cross2(wx, wy, dx, dy)) > 1e-12 * scale) return;
    const double len2 = dx * dx + dy * dy;
    if (len2 == 0.0) return;
    double t0 = (wx * dx + wy * dy) / len2;
    double t1 = ((e1[0] - a[0]) * dx + (e1[1] - a[1]) * dy) / len2;
    if (t0 > t1) std::swap(t0, t1);
    if (t1 < 0.0 || t0 > 1.0) return;
    out.push_back(std::clamp(t0, 0.0, 1.0));
    out.push_back(std::clamp(t1, 0.0, 1.0));
}

void require_dim(const Workspace& w, const Point& x) {
    if (x.dim != w.dimension)
        throw ContractViolation("point dimension does not match workspace dimension");
}

bool strictly_inside_box(const Box& b, const Point& p) {
    for (int k = 0; k < b.dim; ++k)
        if (!(b.lo[k] < p[k] && p[k] < b.hi[k])) return false;
    return true;
}

// True iff the open segment interior passes through the open box.
bool segment_enters_box(const Box& box, const Point& a, const Point& b) {
    double t0 = 0.0, t1 = 1.0;
    for (int k = 0; k < box.dim; ++k) {
        const double d = b[k] - a[k];
        if (d == 0.0) {
            if (!(box.lo[k] < a[k] && a[k] < box.hi[k])) return false;
            continue;
        }
        double u0 = (box.lo[k] - a[k]) / d;
        double u1 = (box.hi[k] - a[k]) / d;
        if (u0 > u1) std::swap(u0, u1);
        t0 = std::max(t0, u0);
        t1 = std::min(t1, u1);
    }
    return t0 < t1;
}

// ---- boost-backed offsetting ------------------------------------------------

namespace bg = boost::geometry;
using BPoint = bg::model::d2::point_xy<double>;
using BPolygon = bg::model::polygon<BPoint, false, true>;  // ccw, closed
using BMultiPolygon = bg::model::multi_polygon<BPolygon>;

// Round join whose chords are tangent to the offset circle: every generated
// edge keeps distance >= r from the corner, so the approximation can only
// over-offset. 8 chords per quarter arc.
class JoinRoundOuter {
public:
    explicit JoinRoundOuter(std::size_t points_per_circle = 4 * kChordsPerQuarterArc)
        : points_per_circle_(points_per_circle) {}

    template <typename P, typename DistanceType, typename RangeOut>
    bool apply(P const& /*ip*/, P const& vertex, P const& perp1, P const& perp2,
               DistanceType const& buffer_distance, RangeOut& range_out) const {
        const double dx1 = bg::get<0>(perp1) - bg::get<0>(vertex);
        const double dy1 = bg::get<1>(perp1) - bg::get<1>(vertex);
        const double dx2 = bg::get<0>(perp2) - bg::get<0>(vertex);
        const double dy2 = bg::get<1>(perp2) - bg::get<1>(vertex);
        if (dx1 == dx2 && dy1 == dy2) return false;

        const double two_pi = 2.0 * 3.14159265358979323846;
        const double angle1 = std::atan2(dy1, dx1);
        double angle2 = std::atan2(dy2, dx2);
        while (angle2 > angle1) angle2 -= two_pi;
        const double angle_diff = angle1 - angle2;

        const double bd = std::abs(static_cast<double>(buffer_distance));
        const std::size_t n = std::max<std::size_t>(
            static_cast<std::size_t>(std::ceil(points_per_circle_ * angle_diff / two_pi)), 1);
        const double step = angle_diff / static_cast<double>(n);
        const double rc = bd / std::cos(0.5 * step);

        range_out.push_back(perp1);
        double a = angle1 - 0.5 * step;
        for (std::size_t i = 0; i < n; ++i, a -= step) {
            P p;
            bg::set<0>(p, bg::get<0>(vertex) + rc * std::cos(a));
            bg::set<1>(p, bg::get<1>(vertex) + rc * std::sin(a));
            range_out.push_back(p);
        }
        range_out.push_back(perp2);
        return true;
    }

    template <typename NumericType>
    static NumericType max_distance(NumericType const& distance) {
        return static_cast<NumericType>(
            distance / std::cos(3.14159265358979323846 / (4.0 * kChordsPerQuarterArc)));
    }

private:
    std::size_t points_per_circle_;
};

BPolygon to_boost(const Region2D& r) {
    BPolygon poly;
    for (const auto& p : r.outer) poly.outer().push_back(BPoint(p[0], p[1]));
    poly.outer().push_back(BPoint(r.outer.front()[0], r.outer.front()[1]));
    for (const auto& h : r.holes) {
        poly.inners().emplace_back();
        for (const auto& p : h) poly.inners().back().push_back(BPoint(p[0], p[1]));
        poly.inners().back().push_back(BPoint(h.front()[0], h.front()[1]));
    }
    bg::correct(poly);
    return poly;
}

std::vector<Point> from_boost_ring(const std::vector<BPoint>& ring) {
    std::vector<Point> out;
    for (std::size_t i = 0; i + 1 < ring.size(); ++i)  // drop closing vertex
        out.push_back(make_point(bg::get<0>(ring[i]), bg::get<1>(ring[i])));
    return out;
}

BMultiPolygon dilate(const BMultiPolygon& mp, double r) {
    BMultiPolygon out;
    bg::strategy::buffer::distance_symmetric<double> dist(r);
    bg::strategy::buffer::side_straight side;
    JoinRoundOuter join;
    bg::strategy::buffer::end_round end(4 * kChordsPerQuarterArc);
    bg::strategy::buffer::point_circle circle(4 * kChordsPerQuarterArc);
    bg::buffer(mp, out, dist, side, join, end, circle);
    return out;
}

std::vector<Region2D> offset_parts(const std::vector<Region2D>& parts, double rho) {
    Box bb = parts.front().bounding_box();
    for (const auto& part : parts) {
        const Box b = part.bounding_box();
        for (int k = 0; k < 2; ++k) {
            bb.lo[k] = std::min(bb.lo[k], b.lo[k]);
            bb.hi[k] = std::max(bb.hi[k], b.hi[k]);
        }
    }
    const Box work = bb.expanded(2.0 * rho + 1.0);
    BPolygon work_poly;
    work_poly.outer() = {BPoint(work.lo[0], work.lo[1]), BPoint(work.hi[0], work.lo[1]),
                         BPoint(work.hi[0], work.hi[1]), BPoint(work.lo[0], work.hi[1]),
                         BPoint(work.lo[0], work.lo[1])};
    bg::correct(work_poly);

    BMultiPolygon free_mp;
    for (const auto& part : parts) free_mp.push_back(to_boost(part));

    // Erode the free set as the complement of the dilated complement;
    // the complement covers both the outside of the boundary and the holes.
    BMultiPolygon complement;
    bg::difference(work_poly, free_mp, complement);
    const BMultiPolygon grown = dilate(complement, rho);

    BMultiPolygon eroded;
    bg::difference(free_mp, grown, eroded);

    std::vector<Region2D> out;
    for (const auto& poly : eroded) {
        Region2D part;
        part.outer = from_boost_ring(poly.outer());
        if (part.outer.size() < 3) continue;
        if (signed_area2(part.outer) < 0) std::reverse(part.outer.begin(), part.outer.end());
        for (const auto& inner : poly.inners()) {
            auto hole = from_boost_ring(inner);
            if (hole.size() < 3) continue;
            if (signed_area2(hole) > 0) std::reverse(hole.begin(), hole.end());
            part.holes.push_back(std::move(hole));
        }
        if (part.area() < 1e-9) continue;  // sliver from boolean roundoff
        out.push_back(std::move(part));
    }
    return out;
}

Workspace offset_workspace(const Workspace& w, double rho, Epoch out_epoch) {
    if (rho < 0.0) throw ContractViolation("offset radius must be nonnegative");
    Workspace out = w;
    out.epoch = out_epoch;
    if (rho == 0.0) return out;

    if (w.dimension == 2) {
        out.parts = offset_parts(w.parts, rho);
        if (out.parts.empty())
            throw EmptyFreeSpace(rho, "erosion removed the entire free space");
        // Defensive: eroded vertices must lie in the input free set.
        for (const auto& part : out.parts)
            for (const auto& v : part.outer)
                if (!contains(w, v))
                    throw Error("offset produced a vertex outside the input free space");
        return out;
    }

    Region3D r = w.region3;
    Box inner = r.bounds;
    for (int k = 0; k < 3; ++k) {
        inner.lo[k] += rho;
        inner.hi[k] -= rho;
        if (!(inner.lo[k] < inner.hi[k]))
            throw EmptyFreeSpace(rho, "erosion removed the entire free space");
    }
    std::vector<Box> grown;
    for (const auto& ob : r.obstacles) {
        Box g = ob.expanded(rho);  // outer approximation of box (+) ball
        bool overlaps = true;
        for (int k = 0; k < 3; ++k)
            if (g.hi[k] < inner.lo[k] || g.lo[k] > inner.hi[k]) overlaps = false;
        if (overlaps) grown.push_back(g);
    }
    r.bounds = inner;
    r.obstacles = std::move(grown);
    out.region3 = std::move(r);
    return out;
}

// Exact volume of a box union via coordinate compression.
double union_volume(const std::vector<Box>& boxes) {
    if (boxes.empty()) return 0.0;
    std::array<std::vector<double>, 3> cuts;
    for (int k = 0; k < 3; ++k) {
        for (const auto& b : boxes) {
            cuts[k].push_back(b.lo[k]);
            cuts[k].push_back(b.hi[k]);
        }
        std::sort(cuts[k].begin(), cuts[k].end());
        cuts[k].erase(std::unique(cuts[k].begin(), cuts[k].end()), cuts[k].end());
    }
    double vol = 0.0;
    for (std::size_t i = 0; i + 1 < cuts[0].size(); ++i)
        for (std::size_t j = 0; j + 1 < cuts[1].size(); ++j)
            for (std::size_t l = 0; l + 1 < cuts[2].size(); ++l) {
                const double cx = 0.5 * (cuts[0][i] + cuts[0][i + 1]);
                const double cy = 0.5 * (cuts[1][j] + cuts[1][j + 1]);
                const double cz = 0.5 * (cuts[2][l] + cuts[2][l + 1]);
                for (const auto& b : boxes)
                    if (b.lo[0] < cx && cx < b.hi[0] && b.lo[1] < cy && cy < b.hi[1] &&
                        b.lo[2] < cz && cz < b.hi[2]) {
                        vol += (cuts[0][i + 1] - cuts[0][i]) * (cuts[1][j + 1] - cuts[1][j]) *
                               (cuts[2][l + 1] - cuts[2][l]);
                        break;
                    }
            }
    return vol;
}

}  // namespace

// ---- Point ------------------------------------------------------------------

Point make_point(double x) {
    Point p;
    p.c = {x, 0.0, 0.0};
    p.dim = 1;
    return p;
}

Point make_point(double x, double y) {
    Point p;
    p.c = {x, y, 0.0};
    p.dim = 2;
    return p;
}

Point make_point(double x, double y, double z) {
    Point p;
    p.c = {x, y, z};
    p.dim = 3;
    return p;
}

Point operator+(const Point& a, const Point& b) {
    Point r = a;
    for (int i = 0; i < a.dim; ++i) r.c[i] += b.c[i];
    return r;
}

Point operator-(const Point& a, const Point& b) {
    Point r = a;
    for (int i = 0; i < a.dim; ++i) r.c[i] -= b.c[i];
    return r;
}

bool operator==(const Point& a, const Point& b) {
    if (a.dim != b.dim) return false;
    for (int i = 0; i < a.dim; ++i)
        if (a.c[i] != b.c[i]) return false;
    return true;
}

double dot(const Point& a, const Point& b) {
    double s = 0.0;
    for (int i = 0; i < a.dim; ++i) s += a.c[i] * b.c[i];
    return s;
}

double norm(const Point& a) { return std::sqrt(dot(a, a)); }

double distance(const Point& a, const Point& b) { return norm(a - b); }

PointSet make_point_set(int dim, std::vector<Point> points) {
    if (dim < 1 || dim > 3) throw ContractViolation("point set dimension must be 1, 2 or 3");
    for (const auto& p : points) {
        if (p.dim != dim) throw ContractViolation("point set contains a mixed-dimension point");
        if (!finite(p)) throw ContractViolation("point set contains a non-finite coordinate");
    }
    PointSet s;
    s.dim = dim;
    s.points = std::move(points);
    return s;
}

// ---- Box --------------------------------------------------------------------

double Box::measure() const {
    double m = 1.0;
    for (int k = 0; k < dim; ++k) m *= hi[k] - lo[k];
    return m;
}

double Box::diagonal() const {
    double s = 0.0;
    for (int k = 0; k < dim; ++k) s += (hi[k] - lo[k]) * (hi[k] - lo[k]);
    return std::sqrt(s);
}

bool Box::contains(const Point& p) const {
    for (int k = 0; k < dim; ++k)
        if (p[k] < lo[k] || p[k] > hi[k]) return false;
    return true;
}

Box Box::expanded(double r) const {
    Box b = *this;
    for (int k = 0; k < dim; ++k) {
        b.lo[k] -= r;
        b.hi[k] += r;
    }
    return b;
}

Point Box::sample(RandomStream& rng) const {
    Point p = lo;
    p.dim = dim;
    for (int k = 0; k < dim; ++k) p[k] = rng.uniform(lo[k], hi[k]);
    return p;
}

Box make_box(const Point& lo, const Point& hi) {
    if (lo.dim != hi.dim) throw ContractViolation("box corners have mixed dimensions");
    for (int k = 0; k < lo.dim; ++k)
        if (!(lo[k] < hi[k])) throw ContractViolation("box requires min < max on every axis");
    Box b;
    b.lo = lo;
    b.hi = hi;
    b.dim = lo.dim;
    return b;
}

// ---- Region2D ---------------------------------------------------------------

double Region2D::area() const {
    double a = 0.5 * std::abs(signed_area2(outer));
    for (const auto& h : holes) a -= 0.5 * std::abs(signed_area2(h));
    return a;
}

Box Region2D::bounding_box() const {
    Point lo = outer.front(), hi = outer.front();
    for (const auto& p : outer)
        for (int k = 0; k < 2; ++k) {
            lo.c[k] = std::min(lo.c[k], p[k]);
            hi.c[k] = std::max(hi.c[k], p[k]);
        }
    Box b;
    b.lo = lo;
    b.hi = hi;
    b.dim = 2;
    return b;
}

namespace {

bool proper_ring(const std::vector<Point>& ring) {
    const std::size_t n = ring.size();
    if (n < 3) return false;
    for (const auto& p : ring)
        if (p.dim != 2 || !finite(p)) return false;
    // No repeated vertices, no crossing edges.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (ring[i] == ring[j]) return false;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
            if (adjacent) continue;
            std::vector<double> ts;
            intersection_params(ring[i], ring[(i + 1) % n], ring[j], ring[(j + 1) % n], ts);
            if (!ts.empty()) return false;
        }
    }
    return true;
}

}  // namespace

Region2D make_region2d(std::vector<Point> outer, std::vector<std::vector<Point>> holes) {
    if (!proper_ring(outer)) throw ContractViolation("outer ring is not a simple polygon");
    if (signed_area2(outer) < 0) std::reverse(outer.begin(), outer.end());
    for (auto& h : holes) {
        if (!proper_ring(h)) throw ContractViolation("hole is not a simple polygon");
        if (signed_area2(h) > 0) std::reverse(h.begin(), h.end());
    }
    Region2D r;
    r.outer = std::move(outer);
    r.holes = std::move(holes);
    if (r.area() < kDegenerateArea) throw ContractViolation("degenerate region (area < 1e-12)");

    for (std::size_t i = 0; i < r.holes.size(); ++i) {
        for (const auto& v : r.holes[i]) {
            if (winding_number(v, r.outer) == 0 || on_ring(v, r.outer))
                throw ContractViolation("hole vertex not strictly inside outer ring");
        }
        for (std::size_t j = i + 1; j < r.holes.size(); ++j) {
            for (const auto& v : r.holes[i])
                if (winding_number(v, r.holes[j]) != 0)
                    throw ContractViolation("holes overlap");
            for (const auto& v : r.holes[j])
                if (winding_number(v, r.holes[i]) != 0)
                    throw ContractViolation("holes overlap");
            const std::size_t ni = r.holes[i].size(), nj = r.holes[j].size();
            for (std::size_t a = 0; a < ni; ++a)
                for (std::size_t b = 0; b < nj; ++b) {
                    std::vector<double> ts;
                    intersection_params(r.holes[i][a], r.holes[i][(a + 1) % ni],
                                        r.holes[j][b], r.holes[j][(b + 1) % nj], ts);
                    if (!ts.empty()) throw ContractViolation("holes overlap");
                }
        }
    }
    return r;
}

Region3D make_region3d(Box bounds, std::vector<Box> obstacles) {
    if (bounds.dim != 3) throw ContractViolation("3D region requires a 3D bounds box");
    for (const auto& ob : obstacles) {
        if (ob.dim != 3) throw ContractViolation("3D obstacle must be a 3D box");
        for (int k = 0; k < 3; ++k)
            if (ob.hi[k] < bounds.lo[k] || ob.lo[k] > bounds.hi[k])
                throw ContractViolation("obstacle does not intersect bounds");
    }
    Region3D r;
    r.bounds = bounds;
    r.obstacles = std::move(obstacles);
    return r;
}

// ---- Workspace --------------------------------------------------------------

Box Workspace::bounding_box() const {
    if (dimension == 3) return region3.bounds;
    Box b = parts.front().bounding_box();
    for (const auto& part : parts) {
        const Box pb = part.bounding_box();
        for (int k = 0; k < 2; ++k) {
            b.lo.c[k] = std::min(b.lo[k], pb.lo[k]);
            b.hi.c[k] = std::max(b.hi[k], pb.hi[k]);
        }
    }
    return b;
}

double Workspace::free_measure() const {
    if (dimension == 2) {
        double a = 0.0;
        for (const auto& part : parts) a += part.area();
        return a;
    }
    std::vector<Box> clipped;
    for (const auto& ob : region3.obstacles) {
        Box c = ob;
        bool nonempty = true;
        for (int k = 0; k < 3; ++k) {
            c.lo.c[k] = std::max(c.lo[k], region3.bounds.lo[k]);
            c.hi.c[k] = std::min(c.hi[k], region3.bounds.hi[k]);
            if (!(c.lo[k] < c.hi[k])) nonempty = false;
        }
        if (nonempty) clipped.push_back(c);
    }
    return region3.bounds.measure() - union_volume(clipped);
}

Workspace make_workspace(Region2D region, Epoch epoch) {
    Workspace w;
    w.dimension = 2;
    w.epoch = epoch;
    w.parts.push_back(std::move(region));
    return w;
}

Workspace make_workspace(Region3D region, Epoch epoch) {
    Workspace w;
    w.dimension = 3;
    w.epoch = epoch;
    w.region3 = std::move(region);
    return w;
}

bool contains(const Workspace& w, const Point& x) {
    require_dim(w, x);
    if (w.dimension == 2) {
        for (const auto& part : w.parts)
            if (region_contains(part, x)) return true;
        return false;
    }
    if (!w.region3.bounds.contains(x)) return false;
    for (const auto& ob : w.region3.obstacles)
        if (strictly_inside_box(ob, x)) return false;
    return true;
}

bool segment_free(const Workspace& w, const Point& a, const Point& b) {
    require_dim(w, a);
    require_dim(w, b);
    if (!contains(w, a) || !contains(w, b)) return false;
    if (a == b) return true;

    if (w.dimension == 3) {
        for (const auto& ob : w.region3.obstacles)
            if (segment_enters_box(ob, a, b)) return false;
        return true;  // bounds are convex and both endpoints are inside
    }

    std::vector<double> ts{0.0, 1.0};
    for (const auto& part : w.parts) {
        const std::size_t n = part.outer.size();
        for (std::size_t i = 0; i < n; ++i)
            intersection_params(a, b, part.outer[i], part.outer[(i + 1) % n], ts);
        for (const auto& h : part.holes) {
            const std::size_t m = h.size();
            for (std::size_t i = 0; i < m; ++i)
                intersection_params(a, b, h[i], h[(i + 1) % m], ts);
        }
    }
    std::sort(ts.begin(), ts.end());
    const Point d = b - a;
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
        if (ts[i + 1] - ts[i] < 1e-12) continue;
        const double tm = 0.5 * (ts[i] + ts[i + 1]);
        Point mid = a;
        mid.c[0] += tm * d[0];
        mid.c[1] += tm * d[1];
        if (!contains(w, mid)) return false;
    }
    return true;
}

Workspace shrink(const Workspace& w, double rho) {
    if (w.epoch != Epoch::free1)
        throw ContractViolation("shrink expects a free1 workspace");
    return offset_workspace(w, rho, Epoch::free2);
}

Workspace apply_safety_margin(const Workspace& w, double margin) {
    if (w.epoch != Epoch::free0)
        throw ContractViolation("apply_safety_margin expects a free0 workspace");
    try {
        return offset_workspace(w, margin, Epoch::free1);
    } catch (const EmptyFreeSpace&) {
        throw EmptyFreeSpace(margin, "safety margin removed the entire free space");
    }
}

AreaEstimate area_fraction(const Workspace& w, const Box& bbox, std::size_t n,
                           RandomStream& rng) {
    if (n == 0) throw ContractViolation("area_fraction requires at least one sample");
    std::size_t hits = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (contains(w, bbox.sample(rng))) ++hits;
    AreaEstimate e;
    e.samples = n;
    e.value = static_cast<double>(hits) / static_cast<double>(n);
    e.std_error = std::sqrt(std::max(e.value * (1.0 - e.value), 0.0) / static_cast<double>(n));
    return e;
}

}  // namespace kdeplan
