#pragma once

#include <functional>
#include <limits>
#include <optional>

#include "kdeplan/pipeline.hpp"

namespace kdeplan {

// Incremental kd-tree over planner states (no rebalancing; fine at the tree
// sizes RRT* reaches here).
class KdTree {
public:
    explicit KdTree(int dim) : dim_(dim) {}

    void insert(const Point& p, int id);
    int nearest(const Point& q) const;  // -1 when empty
    std::vector<int> within(const Point& q, double radius) const;

private:
    struct Node {
        Point p;
        int id;
        int left = -1;
        int right = -1;
    };
    void nearest_rec(int node, int depth, const Point& q, int& best, double& best_d2) const;
    void within_rec(int node, int depth, const Point& q, double r, double r2,
                    std::vector<int>& out) const;

    std::vector<Node> nodes_;
    int root_ = -1;
    int dim_;
};

// RRT* tree. Node 0 is the start with cost 0; rewiring keeps every stored
// cost-to-come equal to parent cost plus edge length, propagating through
// descendants.
class Tree {
public:
    explicit Tree(const Point& start);

    std::size_t size() const { return nodes_.size(); }
    const Point& state(int i) const { return nodes_[i].state; }
    int parent(int i) const { return nodes_[i].parent; }
    double cost(int i) const { return nodes_[i].cost; }

    int add(const Point& s, int parent, double edge_length);
    void rewire(int node, int new_parent, double new_edge_length);

    int nearest(const Point& q) const { return index_.nearest(q); }
    std::vector<int> near(const Point& q, double radius) const { return index_.within(q, radius); }

private:
    struct NodeRec {
        Point state;
        int parent;
        double cost;
        std::vector<int> children;
    };
    std::vector<NodeRec> nodes_;
    KdTree index_;
};

struct Termination {
    enum class Kind { first_feasible, cost_below, sample_budget };
    Kind kind = Kind::first_feasible;
    double cost_threshold = 0.0;      // cost_below
    std::uint64_t sample_budget = 0;  // sample_budget
    std::uint64_t max_samples = 0;    // cap, 0 = unset
    double max_seconds = 0.0;         // cap, 0 = unset
};

Termination terminate_first_feasible(std::uint64_t max_samples, double max_seconds = 0.0);
Termination terminate_cost_below(double threshold, std::uint64_t max_samples,
                                 double max_seconds = 0.0);
Termination terminate_sample_budget(std::uint64_t budget);

struct PlanResult {
    std::optional<std::vector<Point>> path;
    double cost = std::numeric_limits<double>::quiet_NaN();
    std::uint64_t samples_drawn = 0;
    std::uint64_t feasible_samples = 0;
    std::size_t nodes = 0;
    double wall_seconds = 0.0;
    std::uint64_t seed = 0;
};

struct ResolvedPlannerParams {
    double eta = 0.0;
    double gamma = 0.0;
    double goal_tolerance = 0.0;
    double goal_bias = 0.05;
};

// Fills unset (zero) parameters with conventional defaults: eta = 5% of the
// bbox diagonal, gamma = 1.1x the asymptotic-optimality lower bound using the
// bbox measure, goal tolerance = eta / 2.
ResolvedPlannerParams resolve_planner_params(const PlannerParams& in, const Box& bbox, int dim);

double path_cost(const std::vector<Point>& path);

// RRT* with a pluggable sampler. Baseline draws are rejected against free1
// and every raw draw counts in samples_drawn; kde-mode draws are feasible by
// construction and count one each. cost_trace, when given, receives the best
// known cost after every iteration that has a solution.
PlanResult plan(const Workspace& free1, const Point& start, const Point& goal,
                const SamplerSpec& sampler_spec, const Termination& termination,
                const ResolvedPlannerParams& params, RandomStream& rng,
                std::vector<double>* cost_trace = nullptr);

// Convenience overload wiring a scenario and a prepared/baseline sampler arm.
PlanResult plan(const Scenario& scenario, const SamplerSpec& sampler_spec,
                const Termination& termination, RandomStream& rng,
                std::vector<double>* cost_trace = nullptr);

// Sampler arms for the benchmark comparison.
SamplerSpec baseline_arm(const Scenario& s);
SamplerSpec kde_arm(const PreparedSampler& p, SampleMode kde_mode);
SamplerSpec mixed_arm(const PreparedSampler& p, const Scenario& s, double lambda);

}  // namespace kdeplan
