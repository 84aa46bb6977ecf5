#include "kdeplan/kde.hpp"

#include <cmath>

namespace kdeplan {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Composite Simpson on [0,1]; the radial integrands are low-order
// polynomials, so this is exact to roundoff.
template <typename F>
double radial_integral(F f) {
    constexpr int kIntervals = 1 << 12;
    const double h = 1.0 / kIntervals;
    double s = f(0.0) + f(1.0);
    for (int i = 1; i < kIntervals; ++i) s += f(i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

}  // namespace

double Kernel::unit_ball_volume(int p) {
    switch (p) {
        case 1: return 2.0;
        case 2: return kPi;
        case 3: return 4.0 * kPi / 3.0;
        default: throw ContractViolation("kernel dimension must be 1, 2 or 3");
    }
}

double Kernel::value_at_r2(double r2) const {
    switch (kind) {
        case KernelKind::box:
            return r2 <= 1.0 ? 1.0 / unit_ball_volume(dim) : 0.0;
        case KernelKind::epanechnikov: {
            if (r2 > 1.0) return 0.0;
            const double c = (dim + 2.0) / (2.0 * unit_ball_volume(dim));
            return c * (1.0 - r2);
        }
        case KernelKind::gaussian:
            return std::pow(2.0 * kPi, -0.5 * dim) * std::exp(-0.5 * r2);
    }
    return 0.0;
}

double Kernel::second_moment() const {
    if (kind == KernelKind::gaussian) return 1.0;
    const double vp = unit_ball_volume(dim);
    const int p = dim;
    const auto profile = [&](double r) { return value_at_r2(r * r); };
    // mu2 = (1/p) * S_{p-1} * int_0^1 r^{p+1} k(r) dr, with S_{p-1} = p V_p.
    return vp * radial_integral([&](double r) { return std::pow(r, p + 1) * profile(r); });
}

Kernel make_kernel(KernelKind kind, int dim) {
    Kernel::unit_ball_volume(dim);  // validates dim
    Kernel k;
    k.kind = kind;
    k.dim = dim;
    return k;
}

Bandwidth::Bandwidth(const std::vector<double>& entries, int dim) : dim_(dim) {
    if (dim < 1 || dim > 3) throw ContractViolation("bandwidth dimension must be 1, 2 or 3");
    if (entries.size() != static_cast<std::size_t>(dim * dim))
        throw ContractViolation("bandwidth entry count does not match dimension");

    h_.resize(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) h_(i, j) = entries[i * dim + j];

    const double scale = std::max(1.0, h_.cwiseAbs().maxCoeff());
    if ((h_ - h_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw ContractViolation("bandwidth matrix is not symmetric");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h_);
    if (solver.info() != Eigen::Success)
        throw ContractViolation("bandwidth eigendecomposition failed");
    const Eigen::VectorXd eig = solver.eigenvalues();
    if (eig.minCoeff() <= 0.0)
        throw ContractViolation("bandwidth matrix is not positive definite");

    const Eigen::MatrixXd v = solver.eigenvectors();
    sqrt_ = v * eig.cwiseSqrt().asDiagonal() * v.transpose();
    inv_sqrt_ = v * eig.cwiseSqrt().cwiseInverse().asDiagonal() * v.transpose();
    det_inv_sqrt_ = 1.0 / std::sqrt(eig.prod());
    max_sqrt_eig_ = std::sqrt(eig.maxCoeff());

    if ((sqrt_ * sqrt_ - h_).cwiseAbs().maxCoeff() > 1e-10 * scale)
        throw ContractViolation("bandwidth square-root factor failed to reproduce H");

    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            sqrt_flat_[i * dim + j] = sqrt_(i, j);
            inv_sqrt_flat_[i * dim + j] = inv_sqrt_(i, j);
        }
}

double Bandwidth::operator_norm_sqrt(NormOrder q) const {
    switch (q) {
        case NormOrder::l2:
            return max_sqrt_eig_;
        case NormOrder::l1: {
            double best = 0.0;
            for (int j = 0; j < dim_; ++j) best = std::max(best, sqrt_.col(j).cwiseAbs().sum());
            return best;
        }
        case NormOrder::linf: {
            double best = 0.0;
            for (int i = 0; i < dim_; ++i) best = std::max(best, sqrt_.row(i).cwiseAbs().sum());
            return best;
        }
    }
    return max_sqrt_eig_;
}

KdeModel::KdeModel(std::shared_ptr<const PointSet> data, Kernel kernel, Bandwidth bandwidth)
    : basis_(data),
      data_(std::move(data)),
      kernel_(kernel),
      bandwidth_(std::move(bandwidth)),
      weight_cache_(std::make_shared<WeightCache>()) {
    if (!data_ || data_->size() == 0) throw EmptyDataset("kde model requires at least one point");
    if (data_->dim != kernel_.dim || data_->dim != bandwidth_.dim())
        throw ContractViolation("kde model dimension mismatch");
}

double KdeModel::raw_density(const Point& x) const {
    const int p = kernel_.dim;
    const auto& inv = bandwidth_.inv_sqrt_flat();
    const bool finite_k = kernel_.finite_support();
    const double reach = finite_k ? bandwidth_.max_sqrt_eigenvalue() : 0.0;
    const double reach2 = reach * reach;

    double sum = 0.0;
    for (const Point& xi : basis_->points) {
        double d[3] = {0, 0, 0};
        double dist2 = 0.0;
        for (int k = 0; k < p; ++k) {
            d[k] = x[k] - xi[k];
            dist2 += d[k] * d[k];
        }
        if (finite_k && dist2 > reach2) continue;  // outside any possible support
        double r2 = 0.0;
        for (int i = 0; i < p; ++i) {
            double u = 0.0;
            for (int j = 0; j < p; ++j) u += inv[i * p + j] * d[j];
            r2 += u * u;
        }
        sum += kernel_.value_at_r2(r2);
    }
    return bandwidth_.det_inv_sqrt() * sum / static_cast<double>(basis_->size());
}

double KdeModel::evaluate(const Point& x) const {
    if (x.dim != kernel_.dim) throw ContractViolation("query dimension mismatch");
    for (int k = 0; k < x.dim; ++k)
        if (!std::isfinite(x[k])) throw ContractViolation("query point is not finite");
    if (domain_ && !contains(*domain_, x)) return 0.0;
    return raw_density(x) / rho_;
}

const std::vector<double>& KdeModel::weights() const {
    std::call_once(weight_cache_->once, [this] {
        auto& w = weight_cache_->values;
        w.reserve(data_->size());
        for (const Point& xi : data_->points) w.push_back(evaluate(xi));
    });
    return weight_cache_->values;
}

double KdeModel::support_radius() const {
    if (!kernel_.finite_support())
        throw UnsupportedKernel(
            "the Gaussian kernel has infinite support; rejection-free sampling "
            "requires a finite-support kernel");
    return bandwidth_.max_sqrt_eigenvalue();
}

double KdeModel::paper_radius(NormOrder q) const {
    if (!kernel_.finite_support())
        throw UnsupportedKernel(
            "the Gaussian kernel has infinite support; rejection-free sampling "
            "requires a finite-support kernel");
    return bandwidth_.operator_norm_sqrt(q) / kernel_.second_moment();
}

KdeModel KdeModel::truncate(const Workspace& w2, std::size_t mc_budget,
                            std::uint64_t mc_seed) const {
    if (w2.epoch != Epoch::free2)
        throw ContractViolation("truncate expects a free2 workspace");
    if (w2.dimension != kernel_.dim)
        throw ContractViolation("truncate workspace dimension mismatch");
    if (mc_budget < 10000)
        throw ContractViolation("truncate requires an MC budget of at least 10^4");
    if (domain_) throw ContractViolation("model is already truncated");

    auto survivors = std::make_shared<PointSet>();
    survivors->dim = data_->dim;
    for (const Point& xi : data_->points)
        if (contains(w2, xi)) survivors->points.push_back(xi);
    if (survivors->points.empty())
        throw EmptyDataset("no data points survive inside the eroded free space");

    const Box bb = w2.bounding_box();
    RandomStream rng(mc_seed);
    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t i = 0; i < mc_budget; ++i) {
        const Point u = bb.sample(rng);
        const double f = contains(w2, u) ? raw_density(u) : 0.0;
        sum += f;
        sum_sq += f * f;
    }
    const double n = static_cast<double>(mc_budget);
    const double mean = sum / n;
    const double var = std::max(sum_sq / n - mean * mean, 0.0);

    KdeModel out = *this;
    out.data_ = std::move(survivors);
    out.domain_ = std::make_shared<Workspace>(w2);
    out.rho_ = bb.measure() * mean;
    out.rho_se_ = bb.measure() * std::sqrt(var / n);
    out.weight_cache_ = std::make_shared<WeightCache>();
    if (out.rho_ <= 0.0)
        throw EmptyDataset("truncated density carries no mass inside the eroded free space");
    return out;
}

}  // namespace kdeplan
