#include "kdeplan/sampler.hpp"

#include <cmath>
#include <queue>

namespace kdeplan {

const char* to_string(SampleMode mode) {
    switch (mode) {
        case SampleMode::baseline_uniform: return "baseline_uniform";
        case SampleMode::kde_biased: return "kde_biased";
        case SampleMode::kde_uniform: return "kde_uniform";
        case SampleMode::mixed: return "mixed";
    }
    return "?";
}

SamplerSpec make_sampler_spec(SampleMode mode, std::shared_ptr<const KdeModel> model,
                              const Box& bbox, double lambda) {
    SamplerSpec s;
    s.mode = mode;
    s.model = std::move(model);
    s.bbox = bbox;
    s.lambda = lambda;
    const bool needs_model = mode != SampleMode::baseline_uniform;
    const bool needs_bbox = mode == SampleMode::baseline_uniform || mode == SampleMode::mixed;
    if (needs_model && !s.model) throw ContractViolation("sampler mode requires a kde model");
    if (needs_model && !s.model->kernel().finite_support())
        throw UnsupportedKernel("rejection-free sampling requires a finite-support kernel");
    if (needs_bbox && s.bbox.dim == 0) throw ContractViolation("sampler mode requires a bbox");
    if (mode == SampleMode::mixed && !(lambda > 0.0 && lambda < 1.0))
        throw ContractViolation("mixed-mode lambda must lie strictly in (0,1)");
    return s;
}

namespace {

// Uniform direction on the unit sphere in dimension p.
void unit_direction(int p, RandomStream& rng, double out[3]) {
    switch (p) {
        case 1:
            out[0] = rng.uniform() < 0.5 ? -1.0 : 1.0;
            return;
        case 2: {
            const double a = 2.0 * 3.14159265358979323846 * rng.uniform();
            out[0] = std::cos(a);
            out[1] = std::sin(a);
            return;
        }
        default: {
            const double z = rng.uniform(-1.0, 1.0);
            const double a = 2.0 * 3.14159265358979323846 * rng.uniform();
            const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
            out[0] = r * std::cos(a);
            out[1] = r * std::sin(a);
            out[2] = z;
            return;
        }
    }
}

// Uniform point in the closed unit ball.
void uniform_ball(int p, RandomStream& rng, double out[3]) {
    unit_direction(p, rng, out);
    const double radius = std::pow(rng.uniform(), 1.0 / p);
    for (int k = 0; k < p; ++k) out[k] *= radius;
}

}  // namespace

Point draw_kernel_offset(const Kernel& kernel, const Bandwidth& bw, RandomStream& rng) {
    if (!kernel.finite_support())
        throw UnsupportedKernel("rejection-free sampling requires a finite-support kernel");
    const int p = kernel.dim;
    double u[3] = {0, 0, 0};
    if (kernel.kind == KernelKind::box) {
        uniform_ball(p, rng, u);
    } else {
        // Epanechnikov radial law by rejection against the uniform ball.
        for (;;) {
            uniform_ball(p, rng, u);
            const double r2 = u[0] * u[0] + u[1] * u[1] + u[2] * u[2];
            if (rng.uniform() <= 1.0 - r2) break;
        }
    }
    const auto& s = bw.sqrt_flat();
    Point t;
    t.dim = p;
    for (int i = 0; i < p; ++i) {
        double v = 0.0;
        for (int j = 0; j < p; ++j) v += s[i * p + j] * u[j];
        t.c[i] = v;
    }
    return t;
}

std::vector<double> selection_probabilities(const KdeModel& model) {
    const std::vector<double>& w = model.weights();
    std::vector<double> p(w.size());
    double total = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (!(w[i] > 0.0)) throw Error("non-positive density weight");
        p[i] = 1.0 / w[i];
        total += p[i];
    }
    for (double& v : p) v /= total;
    return p;
}

AliasTable::AliasTable(const std::vector<double>& weights) {
    const std::size_t n = weights.size();
    if (n == 0) throw ContractViolation("alias table needs at least one weight");
    double total = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0)) throw ContractViolation("alias table weights must be nonnegative");
        total += w;
    }
    if (!(total > 0.0)) throw ContractViolation("alias table weights sum to zero");

    prob_.assign(n, 0.0);
    alias_.assign(n, 0);
    std::vector<double> scaled(n);
    for (std::size_t i = 0; i < n; ++i) scaled[i] = weights[i] * n / total;

    std::queue<std::size_t> small, large;
    for (std::size_t i = 0; i < n; ++i) (scaled[i] < 1.0 ? small : large).push(i);
    while (!small.empty() && !large.empty()) {
        const std::size_t s = small.front(), l = large.front();
        small.pop();
        large.pop();
        prob_[s] = scaled[s];
        alias_[s] = l;
        scaled[l] -= 1.0 - scaled[s];
        (scaled[l] < 1.0 ? small : large).push(l);
    }
    while (!large.empty()) {
        prob_[large.front()] = 1.0;
        alias_[large.front()] = large.front();
        large.pop();
    }
    while (!small.empty()) {
        prob_[small.front()] = 1.0;
        alias_[small.front()] = small.front();
        small.pop();
    }
}

std::size_t AliasTable::sample(RandomStream& rng) const {
    const std::size_t i = rng.uniform_index(prob_.size());
    return rng.uniform() < prob_[i] ? i : alias_[i];
}

StateSampler::StateSampler(SamplerSpec spec) : spec_(std::move(spec)) {
    if (spec_.mode == SampleMode::kde_uniform || spec_.mode == SampleMode::mixed)
        table_ = std::make_unique<AliasTable>(selection_probabilities(*spec_.model));
    if (spec_.mode != SampleMode::baseline_uniform && spec_.model->data().size() == 0)
        throw EmptyDataset("sampler model has no data points");
}

Point StateSampler::draw_kde(RandomStream& rng, bool uniform_mode) const {
    const KdeModel& m = *spec_.model;
    const std::size_t idx =
        uniform_mode ? table_->sample(rng) : rng.uniform_index(m.data().size());
    const Point t = draw_kernel_offset(m.kernel(), m.bandwidth(), rng);
    return m.data().points[idx] + t;
}

Point StateSampler::draw(RandomStream& rng, std::uint64_t& attempts) const {
    switch (spec_.mode) {
        case SampleMode::baseline_uniform:
            ++attempts;
            return spec_.bbox.sample(rng);
        case SampleMode::kde_biased:
            ++attempts;
            return draw_kde(rng, false);
        case SampleMode::kde_uniform:
            ++attempts;
            return draw_kde(rng, true);
        case SampleMode::mixed:
            ++attempts;
            if (rng.uniform() < spec_.lambda) return draw_kde(rng, true);
            return spec_.bbox.sample(rng);
    }
    throw Error("unreachable sampler mode");
}

SampleBatch StateSampler::batch(std::size_t m, RandomStream& rng) const {
    if (m == 0) throw ContractViolation("batch size must be positive");
    SampleBatch b;
    b.mode = spec_.mode;
    b.points.reserve(m);
    for (std::size_t i = 0; i < m; ++i) b.points.push_back(draw(rng, b.attempts));
    return b;
}

SampleBatch generate(const SamplerSpec& spec, std::size_t m, RandomStream& rng) {
    return StateSampler(spec).batch(m, rng);
}

}  // namespace kdeplan
