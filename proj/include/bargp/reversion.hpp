#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "bargp/ar.hpp"
#include "bargp/bayes_filter.hpp"
#include "bargp/matern.hpp"

namespace bargp {

struct ReversionResult {
    KernelHyperparams psi;
    double objective_value = 0.0;  // sum of squared residuals, 0 for the exact path
    bool converged = false;
    int iterations = 0;
};

struct ExactReversionOptions {
    // When set, theta0 >= 1 maps to this lambda instead of throwing.
    std::optional<double> clamp_lambda;
};

/// m = 1: lambda = (1 - theta0) / delta, sigma^2 = beta / (2 (alpha - 1) (1 - theta0) delta^2).
ReversionResult revert_exact_m1(double theta0, double alpha, double beta, double delta,
                                const ExactReversionOptions& opts = {});

struct NlsOptions {
    int max_iterations = 1000;
    double gradient_tolerance = 1e-8;
    int multistart_count = 8;
    // Log-barrier weights, applied in sequence with warm starts.
    std::vector<double> barrier_weight_schedule{1e-8, 1e-12, 1e-16};
    // Multiply the tau residual by delta^(2m+1). Off by default.
    bool scale_tau_residual = false;
};

/// Least-squares objective over (log lambda, log sigma):
///
///   F = sum_n (theta_n - theta_n(lambda))^2 + (tau - tau(lambda, sigma))^2
///       - w (log lambda + log sigma)
class ReversionObjective {
public:
    ReversionObjective(const MapEstimate& target, int m, double delta, double barrier_weight = 0.0,
                       bool scale_tau_residual = false);

    [[nodiscard]] int order() const noexcept { return m_; }
    [[nodiscard]] Eigen::VectorXd residuals(const Eigen::Vector2d& x) const;
    // rows: residuals, columns: (log lambda, log sigma)
    [[nodiscard]] Eigen::MatrixXd jacobian(const Eigen::Vector2d& x) const;
    [[nodiscard]] double value(const Eigen::Vector2d& x) const;
    [[nodiscard]] Eigen::Vector2d gradient(const Eigen::Vector2d& x) const;
    // Sum of squared residuals without the barrier term.
    [[nodiscard]] double squared_error(const Eigen::Vector2d& x) const;

    void set_barrier_weight(double w) { barrier_weight_ = w; }

    // Split coordinates z = (log lambda, log tau_model): the theta residuals
    // depend only on z[0] and the tau residual only on z[1].
    [[nodiscard]] Eigen::Vector2d to_split(const Eigen::Vector2d& x) const;
    [[nodiscard]] Eigen::Vector2d from_split(const Eigen::Vector2d& z) const;
    [[nodiscard]] Eigen::VectorXd split_residuals(const Eigen::Vector2d& z) const;
    [[nodiscard]] Eigen::MatrixXd split_jacobian(const Eigen::Vector2d& z) const;
    [[nodiscard]] double split_value(const Eigen::Vector2d& z) const;
    // d(log lambda + log sigma)/dz
    [[nodiscard]] Eigen::Vector2d split_barrier_direction() const;

private:
    [[nodiscard]] double model_tau(const Eigen::Vector2d& x) const;

    SmallVector theta_target_;
    double tau_target_;
    int m_;
    double delta_;
    double barrier_weight_;
    double tau_scale_;
    double log_tau_offset_;
};

/// m >= 2 reversion by multistart damped Gauss-Newton on ReversionObjective.
/// Returns the best start; `converged` is false if it hit max_iterations.
/// Throws NumericalError if every start ends non-finite.
ReversionResult revert_nls(const MapEstimate& map, int m, double delta, const NlsOptions& opts = {});

/// Deterministic multistart points (log lambda, log sigma) in [-2, 2]^2.
std::vector<Eigen::Vector2d> multistart_points(int count);

}  // namespace bargp
