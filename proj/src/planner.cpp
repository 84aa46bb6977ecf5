#include "kdeplan/planner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

namespace kdeplan {

// ---- KdTree -------------------------------------------------------------

void KdTree::insert(const Point& p, int id) {
    const int idx = static_cast<int>(nodes_.size());
    nodes_.push_back({p, id, -1, -1});
    if (root_ < 0) {
        root_ = idx;
        return;
    }
    int cur = root_;
    int depth = 0;
    for (;;) {
        const int axis = depth % dim_;
        int& next = p[axis] < nodes_[cur].p[axis] ? nodes_[cur].left : nodes_[cur].right;
        if (next < 0) {
            next = idx;
            return;
        }
        cur = next;
        ++depth;
    }
}

void KdTree::nearest_rec(int node, int depth, const Point& q, int& best,
                         double& best_d2) const {
    if (node < 0) return;
    const Node& n = nodes_[node];
    double d2 = 0.0;
    for (int k = 0; k < dim_; ++k) {
        const double d = q[k] - n.p[k];
        d2 += d * d;
    }
    if (d2 < best_d2) {
        best_d2 = d2;
        best = n.id;
    }
    const int axis = depth % dim_;
    const double delta = q[axis] - n.p[axis];
    const int first = delta < 0 ? n.left : n.right;
    const int second = delta < 0 ? n.right : n.left;
    nearest_rec(first, depth + 1, q, best, best_d2);
    if (delta * delta < best_d2) nearest_rec(second, depth + 1, q, best, best_d2);
}

int KdTree::nearest(const Point& q) const {
    int best = -1;
    double best_d2 = std::numeric_limits<double>::infinity();
    nearest_rec(root_, 0, q, best, best_d2);
    return best;
}

void KdTree::within_rec(int node, int depth, const Point& q, double r, double r2,
                        std::vector<int>& out) const {
    if (node < 0) return;
    const Node& n = nodes_[node];
    double d2 = 0.0;
    for (int k = 0; k < dim_; ++k) {
        const double d = q[k] - n.p[k];
        d2 += d * d;
    }
    if (d2 <= r2) out.push_back(n.id);
    const int axis = depth % dim_;
    const double delta = q[axis] - n.p[axis];
    const int first = delta < 0 ? n.left : n.right;
    const int second = delta < 0 ? n.right : n.left;
    within_rec(first, depth + 1, q, r, r2, out);
    if (std::abs(delta) <= r) within_rec(second, depth + 1, q, r, r2, out);
}

std::vector<int> KdTree::within(const Point& q, double radius) const {
    std::vector<int> out;
    within_rec(root_, 0, q, radius, radius * radius, out);
    return out;
}

// ---- Tree -----------------------------------------------------------------

Tree::Tree(const Point& start) : index_(start.dim) {
    nodes_.push_back({start, -1, 0.0, {}});
    index_.insert(start, 0);
}

int Tree::add(const Point& s, int parent, double edge_length) {
    const int id = static_cast<int>(nodes_.size());
    nodes_.push_back({s, parent, nodes_[parent].cost + edge_length, {}});
    nodes_[parent].children.push_back(id);
    index_.insert(s, id);
    return id;
}

void Tree::rewire(int node, int new_parent, double new_edge_length) {
    NodeRec& rec = nodes_[node];
    auto& siblings = nodes_[rec.parent].children;
    siblings.erase(std::find(siblings.begin(), siblings.end(), node));
    rec.parent = new_parent;
    nodes_[new_parent].children.push_back(node);

    const double delta = nodes_[new_parent].cost + new_edge_length - rec.cost;
    // propagate the cost change through the subtree
    std::vector<int> stack{node};
    while (!stack.empty()) {
        const int cur = stack.back();
        stack.pop_back();
        nodes_[cur].cost += delta;
        for (int c : nodes_[cur].children) stack.push_back(c);
    }
}

// ---- parameters and termination --------------------------------------------

Termination terminate_first_feasible(std::uint64_t max_samples, double max_seconds) {
    Termination t;
    t.kind = Termination::Kind::first_feasible;
    t.max_samples = max_samples;
    t.max_seconds = max_seconds;
    if (t.max_samples == 0 && t.max_seconds <= 0.0)
        throw ContractViolation("termination needs at least one cap");
    return t;
}

Termination terminate_cost_below(double threshold, std::uint64_t max_samples,
                                 double max_seconds) {
    Termination t;
    t.kind = Termination::Kind::cost_below;
    t.cost_threshold = threshold;
    t.max_samples = max_samples;
    t.max_seconds = max_seconds;
    if (threshold <= 0.0) throw ContractViolation("cost threshold must be positive");
    if (t.max_samples == 0 && t.max_seconds <= 0.0)
        throw ContractViolation("termination needs at least one cap");
    return t;
}

Termination terminate_sample_budget(std::uint64_t budget) {
    Termination t;
    t.kind = Termination::Kind::sample_budget;
    t.sample_budget = budget;
    t.max_samples = budget;
    if (budget == 0) throw ContractViolation("sample budget must be positive");
    return t;
}

ResolvedPlannerParams resolve_planner_params(const PlannerParams& in, const Box& bbox,
                                             int dim) {
    ResolvedPlannerParams out;
    out.eta = in.eta > 0.0 ? in.eta : 0.05 * bbox.diagonal();
    if (in.gamma > 0.0) {
        out.gamma = in.gamma;
    } else {
        const double p = static_cast<double>(dim);
        const double zeta = Kernel::unit_ball_volume(dim);
        const double lower =
            std::pow(2.0 * (1.0 + 1.0 / p), 1.0 / p) * std::pow(bbox.measure() / zeta, 1.0 / p);
        out.gamma = 1.1 * lower;
    }
    out.goal_tolerance = in.goal_tolerance > 0.0 ? in.goal_tolerance : 0.5 * out.eta;
    out.goal_bias = in.goal_bias;
    if (out.goal_bias < 0.0 || out.goal_bias >= 1.0)
        throw ContractViolation("goal bias must lie in [0,1)");
    return out;
}

double path_cost(const std::vector<Point>& path) {
    if (path.size() < 2) throw ContractViolation("path cost needs at least two points");
    double c = 0.0;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) c += distance(path[i], path[i + 1]);
    return c;
}

// ---- plan -------------------------------------------------------------------

namespace {

Point steer(const Point& from, const Point& toward, double eta) {
    const double d = distance(from, toward);
    if (d <= eta) return toward;
    Point out = from;
    for (int k = 0; k < from.dim; ++k) out.c[k] += eta * (toward[k] - from[k]) / d;
    return out;
}

}  // namespace

PlanResult plan(const Workspace& free1, const Point& start, const Point& goal,
                const SamplerSpec& sampler_spec, const Termination& termination,
                const ResolvedPlannerParams& params, RandomStream& rng,
                std::vector<double>* cost_trace) {
    if (!contains(free1, start)) throw ContractViolation("start state is infeasible");
    if (!contains(free1, goal)) throw ContractViolation("goal state is infeasible");

    PlanResult result;
    result.seed = rng.seed();

    if (start == goal) {
        result.path = std::vector<Point>{start};
        result.cost = 0.0;
        result.nodes = 1;
        return result;
    }

    const auto t_begin = std::chrono::steady_clock::now();
    const StateSampler sampler(sampler_spec);
    const bool rejects = sampler_spec.mode == SampleMode::baseline_uniform ||
                         sampler_spec.mode == SampleMode::mixed;
    const double p_inv = 1.0 / static_cast<double>(free1.dimension);

    Tree tree(start);
    int goal_anchor = -1;        // tree node connected to the goal
    double goal_edge = 0.0;
    double best = std::numeric_limits<double>::infinity();

    const auto elapsed = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t_begin).count();
    };
    const auto capped = [&] {
        if (termination.max_samples > 0 && result.samples_drawn >= termination.max_samples)
            return true;
        return termination.max_seconds > 0.0 && elapsed() >= termination.max_seconds;
    };
    const auto done = [&] {
        switch (termination.kind) {
            case Termination::Kind::first_feasible:
                return best < std::numeric_limits<double>::infinity();
            case Termination::Kind::cost_below:
                return best < termination.cost_threshold;
            case Termination::Kind::sample_budget:
                return result.samples_drawn >= termination.sample_budget;
        }
        return true;
    };

    while (!done() && !capped()) {
        Point target;
        if (params.goal_bias > 0.0 && rng.uniform() < params.goal_bias) {
            target = goal;
            ++result.samples_drawn;
            ++result.feasible_samples;
        } else if (rejects) {
            // kde-origin draws in mixed mode pass the containment check by
            // construction; only raw box draws actually get rejected here.
            for (;;) {
                target = sampler.draw(rng, result.samples_drawn);
                if (contains(free1, target)) break;
                if (capped()) break;
            }
            if (!contains(free1, target)) break;  // cap hit inside rejection loop
            ++result.feasible_samples;
        } else {
            target = sampler.draw(rng, result.samples_drawn);
            ++result.feasible_samples;
        }

        const int nearest = tree.nearest(target);
        const Point fresh = steer(tree.state(nearest), target, params.eta);
        if (!contains(free1, fresh)) continue;
        if (!segment_free(free1, tree.state(nearest), fresh)) continue;

        const double n = static_cast<double>(tree.size());
        const double radius =
            n >= 2.0 ? std::min(params.gamma * std::pow(std::log(n) / n, p_inv), params.eta)
                     : params.eta;
        std::vector<int> near = tree.near(fresh, radius);

        // choose parent
        int parent = nearest;
        double parent_edge = distance(tree.state(nearest), fresh);
        double best_cost = tree.cost(nearest) + parent_edge;
        for (int cand : near) {
            const double edge = distance(tree.state(cand), fresh);
            const double c = tree.cost(cand) + edge;
            if (c < best_cost && segment_free(free1, tree.state(cand), fresh)) {
                parent = cand;
                parent_edge = edge;
                best_cost = c;
            }
        }
        const int added = tree.add(fresh, parent, parent_edge);

        // rewire neighbours through the new node
        for (int cand : near) {
            if (cand == parent) continue;
            const double edge = distance(fresh, tree.state(cand));
            if (tree.cost(added) + edge < tree.cost(cand) - 1e-12 &&
                segment_free(free1, fresh, tree.state(cand)))
                tree.rewire(cand, added, edge);
        }

        // goal connection
        const double goal_gap = distance(fresh, goal);
        if (goal_gap <= params.goal_tolerance && segment_free(free1, fresh, goal)) {
            if (goal_anchor < 0 ||
                tree.cost(added) + goal_gap < tree.cost(goal_anchor) + goal_edge) {
                goal_anchor = added;
                goal_edge = goal_gap;
            }
        }
        if (goal_anchor >= 0) {
            // rewiring may have improved the anchor's ancestors
            best = std::min(best, tree.cost(goal_anchor) + goal_edge);
            if (cost_trace) cost_trace->push_back(best);
        }
    }

    result.nodes = tree.size();
    result.wall_seconds = elapsed();
    if (goal_anchor >= 0) {
        std::vector<Point> path;
        for (int cur = goal_anchor; cur >= 0; cur = tree.parent(cur))
            path.push_back(tree.state(cur));
        std::reverse(path.begin(), path.end());
        if (!(path.back() == goal)) path.push_back(goal);
        result.path = std::move(path);
        result.cost = best;
    }
    return result;
}

PlanResult plan(const Scenario& scenario, const SamplerSpec& sampler_spec,
                const Termination& termination, RandomStream& rng,
                std::vector<double>* cost_trace) {
    const ResolvedPlannerParams params = resolve_planner_params(
        scenario.planner, scenario.workspace_free1.bounding_box(), scenario.dimension);
    return plan(scenario.workspace_free1, scenario.start, scenario.goal, sampler_spec,
                termination, params, rng, cost_trace);
}

SamplerSpec baseline_arm(const Scenario& s) {
    return make_sampler_spec(SampleMode::baseline_uniform, nullptr,
                             s.workspace_free1.bounding_box());
}

SamplerSpec kde_arm(const PreparedSampler& p, SampleMode kde_mode) {
    if (kde_mode != SampleMode::kde_biased && kde_mode != SampleMode::kde_uniform)
        throw ContractViolation("kde arm requires a kde sampling mode");
    return make_sampler_spec(kde_mode, std::make_shared<const KdeModel>(p.model),
                             p.free1->bounding_box());
}

SamplerSpec mixed_arm(const PreparedSampler& p, const Scenario& s, double lambda) {
    return make_sampler_spec(SampleMode::mixed, std::make_shared<const KdeModel>(p.model),
                             s.workspace_free1.bounding_box(), lambda);
}

}  // namespace kdeplan
