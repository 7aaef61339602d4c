#pragma once

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "bargp/matern.hpp"

namespace bargp {

/// Cholesky factor of K + jitter I. Jitter starts at 1e-10 sigma^2 and grows
/// by 10x up to 1e-4 sigma^2; NumericalError past that.
struct JitteredCholesky {
    Eigen::LLT<Eigen::MatrixXd> llt;
    double jitter = 0.0;
};

JitteredCholesky factorize_with_jitter(const Eigen::MatrixXd& k, double sigma2);

struct PredictiveResult {
    Eigen::VectorXd mean;
    Eigen::MatrixXd cov;
    std::optional<double> rmse;  // set when targets are known
};

/// -1/2 y^T K^-1 y - 1/2 log|K| - N/2 log(2 pi)
double log_marginal_likelihood(const TimeSeries& series, const KernelHyperparams& psi);

struct LikelihoodGradient {
    double value = 0.0;
    Eigen::Vector2d gradient = Eigen::Vector2d::Zero();  // d/d(log sigma, log l)
    double jitter = 0.0;
};

/// Log marginal likelihood and its analytic gradient in log-parameters.
LikelihoodGradient log_marginal_likelihood_with_gradient(const TimeSeries& series, const KernelHyperparams& psi);

struct MmlOptions {
    int max_iterations = 1000;
    // On the gradient of the per-observation log likelihood, infinity norm.
    double gradient_tolerance = 1e-6;
};

struct MmlResult {
    KernelHyperparams psi;
    double log_likelihood = 0.0;
    double gradient_norm = 0.0;  // per observation, infinity norm
    bool converged = false;
    int iterations = 0;
};

/// Maximizes the log marginal likelihood over (log sigma, log l) with BFGS,
/// starting from `init`. Returns the best iterate even without convergence.
MmlResult mml_fit(const TimeSeries& series, int m, const KernelHyperparams& init, const MmlOptions& opts = {});

/// Noise-free GP conditioning of the training series onto `test_times`.
PredictiveResult gp_predict(const TimeSeries& train, std::span<const double> test_times, const KernelHyperparams& psi);

/// As above on the test series' grid, with RMSE against its values.
PredictiveResult gp_predict(const TimeSeries& train, const TimeSeries& test, const KernelHyperparams& psi);

double rmse(std::span<const double> predicted, std::span<const double> targets);

}  // namespace bargp
