#include "kdeplan/pipeline.hpp"

#include <cmath>
#include <sstream>

namespace kdeplan {

Scenario make_scenario(Workspace raw_free0, double safety_distance,
                       std::shared_ptr<const PointSet> data, KernelKind kernel,
                       std::vector<double> h, Point start, Point goal) {
    if (!data || data->size() == 0) throw ScenarioError("scenario data set is empty");
    if (raw_free0.epoch != Epoch::free0)
        throw ContractViolation("raw scenario workspace must carry epoch free0");
    if (safety_distance < 0.0) throw ScenarioError("safety distance must be nonnegative");

    Scenario s;
    s.dimension = raw_free0.dimension;
    if (data->dim != s.dimension) throw ScenarioError("data dimension does not match workspace");
    if (start.dim != s.dimension || goal.dim != s.dimension)
        throw ScenarioError("start/goal dimension does not match workspace");

    Bandwidth bw(h, s.dimension);  // validates SPD
    (void)bw;

    s.workspace_raw = raw_free0;
    s.workspace_free1 = apply_safety_margin(raw_free0, safety_distance);
    s.safety_distance = safety_distance;
    s.data = std::move(data);
    s.kernel = kernel;
    s.h = std::move(h);
    s.start = start;
    s.goal = goal;

    if (!contains(s.workspace_free1, s.start))
        throw ScenarioError("start state lies outside the free space");
    if (!contains(s.workspace_free1, s.goal))
        throw ScenarioError("goal state lies outside the free space");
    return s;
}

PreparedSampler prepare(const Scenario& s) {
    const Kernel kernel = make_kernel(s.kernel, s.dimension);
    const Bandwidth bw(s.h, s.dimension);
    const KdeModel base(s.data, kernel, bw);

    const double rho = s.radius_choice == RadiusChoice::tight
                           ? base.support_radius()
                           : base.paper_radius(s.q);

    Workspace w2;
    try {
        w2 = shrink(s.workspace_free1, rho);
    } catch (const EmptyFreeSpace&) {
        std::ostringstream msg;
        msg << "erosion by rho=" << rho << " removed the entire free space (free1 measure "
            << s.workspace_free1.free_measure() << ")";
        throw EmptyFreeSpace(rho, msg.str());
    }

    KdeModel truncated = [&] {
        try {
            if (s.truncation == TruncationMode::refit) {
                auto survivors = std::make_shared<PointSet>();
                survivors->dim = s.data->dim;
                for (const Point& xi : s.data->points)
                    if (contains(w2, xi)) survivors->points.push_back(xi);
                if (survivors->points.empty())
                    throw EmptyDataset("no data points survive inside the eroded free space");
                return KdeModel(survivors, kernel, bw).truncate(w2, s.rho_mc_budget);
            }
            return base.truncate(w2, s.rho_mc_budget);
        } catch (const EmptyDataset&) {
            std::ostringstream msg;
            msg << "no data points survive erosion by rho=" << rho << " (n="
                << s.data->size() << ", eroded free measure " << w2.free_measure() << ")";
            throw EmptyDataset(msg.str());
        }
    }();

    auto xbar = truncated.data_ptr();
    const std::size_t dropped = s.data->size() - xbar->size();
    return PreparedSampler{std::move(w2), std::move(xbar), std::move(truncated), rho, dropped,
                           std::make_shared<Workspace>(s.workspace_free1)};
}

namespace {

struct Occupancy {
    double occupied_fraction = 0.0;
    double cv = 0.0;
};

Occupancy occupancy_stats(const std::vector<Point>& pts, const Box& bb) {
    const int cells_per_axis = bb.dim == 2 ? 32 : 12;
    std::size_t total = 1;
    for (int k = 0; k < bb.dim; ++k) total *= cells_per_axis;
    std::vector<std::uint32_t> counts(total, 0);
    for (const Point& p : pts) {
        std::size_t idx = 0;
        for (int k = 0; k < bb.dim; ++k) {
            const double t = (p[k] - bb.lo[k]) / (bb.hi[k] - bb.lo[k]);
            int c = static_cast<int>(t * cells_per_axis);
            c = std::clamp(c, 0, cells_per_axis - 1);
            idx = idx * cells_per_axis + static_cast<std::size_t>(c);
        }
        ++counts[idx];
    }
    std::size_t occupied = 0;
    double sum = 0.0;
    for (const auto c : counts)
        if (c > 0) {
            ++occupied;
            sum += c;
        }
    Occupancy o;
    o.occupied_fraction = static_cast<double>(occupied) / static_cast<double>(total);
    if (occupied == 0) return o;
    const double mean = sum / static_cast<double>(occupied);
    double var = 0.0;
    for (const auto c : counts)
        if (c > 0) var += (c - mean) * (c - mean);
    var /= static_cast<double>(occupied);
    o.cv = std::sqrt(var) / mean;
    return o;
}

}  // namespace

ValidationReport validate(const PreparedSampler& p, std::size_t n_probe, RandomStream& rng) {
    if (n_probe == 0) throw ContractViolation("validate requires at least one probe");

    auto model = std::make_shared<const KdeModel>(p.model);
    const Box bb = p.free1->bounding_box();

    ValidationReport report;
    report.probes_per_mode = n_probe;

    Point first_violation;
    bool has_violation = false;

    const SampleMode modes[2] = {SampleMode::kde_biased, SampleMode::kde_uniform};
    for (int mi = 0; mi < 2; ++mi) {
        const StateSampler sampler(make_sampler_spec(modes[mi], model, bb));
        std::uint64_t attempts = 0;
        std::vector<Point> pts;
        pts.reserve(n_probe);
        for (std::size_t i = 0; i < n_probe; ++i) {
            const Point s = sampler.draw(rng, attempts);
            if (!contains(*p.free1, s)) {
                ++report.violations;
                if (!has_violation) {
                    first_violation = s;
                    has_violation = true;
                }
            }
            pts.push_back(s);
        }
        const Occupancy o = occupancy_stats(pts, bb);
        if (modes[mi] == SampleMode::kde_biased) {
            report.occupied_fraction_biased = o.occupied_fraction;
            report.cv_biased = o.cv;
        } else {
            report.occupied_fraction_uniform = o.occupied_fraction;
            report.cv_uniform = o.cv;
        }
    }

    if (report.violations > 0) {
        std::vector<double> coords(first_violation.c.begin(),
                                   first_violation.c.begin() + first_violation.dim);
        std::ostringstream msg;
        msg << report.violations << " of " << 2 * n_probe
            << " samples escaped the free space; first at (";
        for (std::size_t i = 0; i < coords.size(); ++i)
            msg << (i ? ", " : "") << coords[i];
        msg << ")";
        throw GuaranteeViolation(std::move(coords), report.violations, msg.str());
    }
    return report;
}

}  // namespace kdeplan
