#pragma once

#include <memory>
#include <mutex>
#include <vector>

#include <Eigen/Dense>

#include "kdeplan/geometry.hpp"

namespace kdeplan {

enum class KernelKind { box, epanechnikov, gaussian };

// Spherically symmetric kernel. The finite-support kinds (box, Epanechnikov)
// have the closed unit ball as support and integrate to one:
//   box:          K(u) = 1/V_p            for |u| <= 1
//   epanechnikov: K(u) = c_p (1 - |u|^2)  for |u| <= 1, c_p = (p+2)/(2 V_p)
// The Gaussian kernel has infinite support and cannot take part in the
// rejection-free construction.
struct Kernel {
    KernelKind kind = KernelKind::epanechnikov;
    int dim = 2;

    bool finite_support() const { return kind != KernelKind::gaussian; }
    double value_at_r2(double r2) const;   // K at squared argument norm
    double at_zero() const { return value_at_r2(0.0); }

    // Per-axis second moment mu2 = int u_1^2 K(u) du, by numeric radial
    // quadrature for the finite-support kinds (1 analytically for Gaussian).
    double second_moment() const;

    static double unit_ball_volume(int p);
};

Kernel make_kernel(KernelKind kind, int dim);

enum class NormOrder { l1, l2, linf };

// SPD bandwidth matrix H with cached factors H^{1/2}, H^{-1/2}, |H|^{-1/2}.
class Bandwidth {
public:
    // entries: row-major p x p.
    Bandwidth(const std::vector<double>& entries, int dim);

    int dim() const { return dim_; }
    const Eigen::MatrixXd& matrix() const { return h_; }
    const Eigen::MatrixXd& sqrt() const { return sqrt_; }
    const Eigen::MatrixXd& inv_sqrt() const { return inv_sqrt_; }
    double det_inv_sqrt() const { return det_inv_sqrt_; }

    // Largest eigenvalue of H^{1/2} = largest kernel perturbation length.
    double max_sqrt_eigenvalue() const { return max_sqrt_eig_; }

    // Induced matrix norm |H^{1/2}|_q for q in {1, 2, inf}.
    double operator_norm_sqrt(NormOrder q) const;

    // Row-major flat copies for inner loops.
    const std::array<double, 9>& sqrt_flat() const { return sqrt_flat_; }
    const std::array<double, 9>& inv_sqrt_flat() const { return inv_sqrt_flat_; }

private:
    int dim_;
    Eigen::MatrixXd h_, sqrt_, inv_sqrt_;
    double det_inv_sqrt_ = 0.0;
    double max_sqrt_eig_ = 0.0;
    std::array<double, 9> sqrt_flat_{}, inv_sqrt_flat_{};
};

// Multivariate kernel density estimate
//   f(x) = 1/(n rho) * sum_i |H|^{-1/2} K(H^{-1/2}(x - x_i))
// where the sum runs over the evaluation basis (the original data set) and
// rho = 1 for untruncated models. A truncated model additionally owns the
// eroded workspace it was truncated to: evaluate() is zero outside it, the
// selectable data() shrinks to the surviving points, and rho renormalizes
// the remaining mass. Immutable; safe for concurrent readers.
class KdeModel {
public:
    KdeModel(std::shared_ptr<const PointSet> data, Kernel kernel, Bandwidth bandwidth);

    double evaluate(const Point& x) const;

    // Density at every selectable data point; cached after the first call.
    const std::vector<double>& weights() const;

    // Tight erosion radius: every kernel perturbation t = H^{1/2} u with
    // |u| <= 1 satisfies |t| <= support_radius(). Finite-support kernels only.
    double support_radius() const;

    // The more conservative radius (1/mu2(K)) |H^{1/2}|_q; always at least
    // support_radius() for the box and Epanechnikov kernels.
    double paper_radius(NormOrder q) const;

    // Restriction to an eroded (free2) workspace: keeps the evaluation basis,
    // reduces the selectable data to the surviving points and renormalizes by
    // a Monte Carlo estimate of the remaining mass (mc_budget >= 10^4 draws
    // over the workspace bounding box, seeded for reproducibility).
    KdeModel truncate(const Workspace& w2, std::size_t mc_budget,
                      std::uint64_t mc_seed = 0x6b6465706c616e01ull) const;

    const PointSet& data() const { return *data_; }
    std::shared_ptr<const PointSet> data_ptr() const { return data_; }
    const PointSet& basis() const { return *basis_; }
    const Kernel& kernel() const { return kernel_; }
    const Bandwidth& bandwidth() const { return bandwidth_; }
    int dim() const { return kernel_.dim; }

    bool truncated() const { return domain_ != nullptr; }
    const Workspace* domain() const { return domain_.get(); }
    double normalization() const { return rho_; }
    double normalization_std_error() const { return rho_se_; }

private:
    double raw_density(const Point& x) const;  // basis mixture, no rho, no domain

    std::shared_ptr<const PointSet> basis_;  // evaluation basis (original X)
    std::shared_ptr<const PointSet> data_;   // selectable points (X or Xbar)
    Kernel kernel_;
    Bandwidth bandwidth_;
    std::shared_ptr<const Workspace> domain_;
    double rho_ = 1.0;
    double rho_se_ = 0.0;

    struct WeightCache {
        std::once_flag once;
        std::vector<double> values;
    };
    std::shared_ptr<WeightCache> weight_cache_;
};

}  // namespace kdeplan
