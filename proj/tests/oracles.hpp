// Test-only oracles, kept independent of the library implementation paths
// they are used to check.
#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "kdeplan/geometry.hpp"

namespace oracles {

// Naive even-odd ray casting (horizontal ray, half-open vertex rule).
// Boundary points are classified separately by the caller when needed.
inline bool ray_cast_inside(const kdeplan::Point& p, const std::vector<kdeplan::Point>& ring) {
    bool inside = false;
    const std::size_t n = ring.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const double xi = ring[i][0], yi = ring[i][1];
        const double xj = ring[j][0], yj = ring[j][1];
        if ((yi > p[1]) != (yj > p[1])) {
            const double x_cross = xj + (p[1] - yj) * (xi - xj) / (yi - yj);
            if (p[0] < x_cross) inside = !inside;
        }
    }
    return inside;
}

inline bool ray_cast_region(const kdeplan::Point& p, const kdeplan::Region2D& r) {
    if (!ray_cast_inside(p, r.outer)) return false;
    for (const auto& h : r.holes)
        if (ray_cast_inside(p, h)) return false;
    return true;
}

// Dense-stepping segment feasibility (strictly weaker than the exact check,
// adequate as an oracle away from tangent cases).
inline bool stepped_segment_free(const kdeplan::Workspace& w, const kdeplan::Point& a,
                                 const kdeplan::Point& b, int steps = 4096) {
    for (int i = 0; i <= steps; ++i) {
        const double t = static_cast<double>(i) / steps;
        kdeplan::Point p = a;
        for (int k = 0; k < a.dim; ++k) p.c[k] = a[k] + t * (b[k] - a[k]);
        if (!kdeplan::contains(w, p)) return false;
    }
    return true;
}

// Closed-box segment clip: parameter interval of the segment inside the box.
// Returns interval length (0 when the intersection is a point or empty).
inline double box_clip_overlap(const kdeplan::Box& box, const kdeplan::Point& a,
                               const kdeplan::Point& b) {
    double t0 = 0.0, t1 = 1.0;
    for (int k = 0; k < box.dim; ++k) {
        const double d = b[k] - a[k];
        if (d == 0.0) {
            if (a[k] < box.lo[k] || a[k] > box.hi[k]) return 0.0;
            continue;
        }
        double u0 = (box.lo[k] - a[k]) / d;
        double u1 = (box.hi[k] - a[k]) / d;
        if (u0 > u1) std::swap(u0, u1);
        t0 = std::max(t0, u0);
        t1 = std::min(t1, u1);
    }
    return std::max(0.0, t1 - t0);
}

// Composite Simpson quadrature.
inline double simpson(const std::function<double(double)>& f, double lo, double hi,
                      int intervals = 4096) {
    if (intervals % 2) ++intervals;
    const double h = (hi - lo) / intervals;
    double s = f(lo) + f(hi);
    for (int i = 1; i < intervals; ++i) s += f(lo + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

inline double mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

inline double population_std(const std::vector<double>& v) {
    const double m = mean(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(v.size()));
}

// Upper quantile of the chi-square distribution (Wilson-Hilferty).
inline double chi_square_quantile(double p, double dof) {
    // inverse standard normal via Acklam's rational approximation
    auto inv_norm = [](double q) {
        static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                   -2.759285104469687e+02, 1.383577518672690e+02,
                                   -3.066479806614716e+01, 2.506628277459239e+00};
        static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                   -1.556989798598866e+02, 6.680131188771972e+01,
                                   -1.328068155288572e+01};
        static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                   -2.400758277161838e+00, -2.549732539343734e+00,
                                   4.374664141464968e+00,  2.938163982698783e+00};
        static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                   2.445134137142996e+00, 3.754408661907416e+00};
        const double plow = 0.02425, phigh = 1 - plow;
        double x;
        if (q < plow) {
            const double u = std::sqrt(-2 * std::log(q));
            x = (((((c[0] * u + c[1]) * u + c[2]) * u + c[3]) * u + c[4]) * u + c[5]) /
                ((((d[0] * u + d[1]) * u + d[2]) * u + d[3]) * u + 1);
        } else if (q <= phigh) {
            const double u = q - 0.5, r = u * u;
            x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * u /
                (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
        } else {
            const double u = std::sqrt(-2 * std::log(1 - q));
            x = -(((((c[0] * u + c[1]) * u + c[2]) * u + c[3]) * u + c[4]) * u + c[5]) /
                ((((d[0] * u + d[1]) * u + d[2]) * u + d[3]) * u + 1);
        }
        return x;
    };
    const double z = inv_norm(p);
    const double t = 1.0 - 2.0 / (9.0 * dof) + z * std::sqrt(2.0 / (9.0 * dof));
    return dof * t * t * t;
}

}  // namespace oracles
