#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "kdeplan/kde.hpp"

namespace kdeplan {

enum class SampleMode { baseline_uniform, kde_biased, kde_uniform, mixed };

const char* to_string(SampleMode mode);

// Sampling configuration. kde modes need a model; baseline needs a bounding
// box; mixed needs both (each draw is kde_uniform with probability lambda,
// otherwise a raw box draw whose workspace rejection is the caller's job).
struct SamplerSpec {
    SampleMode mode = SampleMode::baseline_uniform;
    std::shared_ptr<const KdeModel> model;
    Box bbox;
    double lambda = 0.9;
};

SamplerSpec make_sampler_spec(SampleMode mode, std::shared_ptr<const KdeModel> model,
                              const Box& bbox, double lambda = 0.9);

struct SampleBatch {
    std::vector<Point> points;
    std::uint64_t attempts = 0;  // raw draws including rejections; == points
                                 // exactly for the kde modes
    SampleMode mode = SampleMode::baseline_uniform;
};

// One kernel perturbation t = H^{1/2} u with u distributed as the kernel on
// the unit ball. Box: uniform ball (direction times radius^{1/p}).
// Epanechnikov: rejection against the uniform-ball envelope with acceptance
// profile (1 - |u|^2). Always |t| <= support radius. Gaussian is refused.
Point draw_kernel_offset(const Kernel& kernel, const Bandwidth& bw, RandomStream& rng);

// p_i proportional to 1/omega_i, normalized to sum 1.
std::vector<double> selection_probabilities(const KdeModel& model);

// Walker alias table: O(n) construction, O(1) per draw.
class AliasTable {
public:
    explicit AliasTable(const std::vector<double>& weights);
    std::size_t sample(RandomStream& rng) const;
    std::size_t size() const { return prob_.size(); }

private:
    std::vector<double> prob_;
    std::vector<std::size_t> alias_;
};

// Draws m states per the spec; kde modes consume exactly one attempt per
// point (the rejection-free guarantee), baseline counts raw box draws only.
SampleBatch generate(const SamplerSpec& spec, std::size_t m, RandomStream& rng);

// Reusable sampler holding the precomputed selection table.
class StateSampler {
public:
    explicit StateSampler(SamplerSpec spec);

    // One draw; adds the number of raw draws consumed to attempts.
    Point draw(RandomStream& rng, std::uint64_t& attempts) const;

    SampleBatch batch(std::size_t m, RandomStream& rng) const;
    const SamplerSpec& spec() const { return spec_; }

private:
    Point draw_kde(RandomStream& rng, bool uniform_mode) const;

    SamplerSpec spec_;
    std::unique_ptr<AliasTable> table_;  // kde_uniform / mixed
};

}  // namespace kdeplan
