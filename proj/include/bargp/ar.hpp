#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "bargp/matern.hpp"
#include "bargp/sde.hpp"

namespace bargp {

using SmallVector = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxOrder, 1>;
using SmallMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxOrder, kMaxOrder>;

/// AR(m) form of the discretized SDE on a grid of step `delta`:
///
///     y_{k+1} = sum_j theta[j] y_{k-j} + e_k,   e_k ~ N(0, 1/tau)
///
/// theta[0] pairs with the newest sample (buffer order).
struct ArSubstitution {
    int m = 0;
    SmallVector theta;
    double tau = 0.0;
    double delta = 0.0;
};

/// Forward-difference expansion of sum_n a_n d^n f / dt^n (a_m = 1) scaled by
/// delta^m. Returns c_j, the coefficient of f_{k+j}, j = 0..m (oldest first);
/// c_m is always 1.
std::vector<double> difference_coefficients(const SdeCoefficients& sde, double delta);

/// AR coefficients (newest first) for a given lambda.
SmallVector ar_coefficients(int m, double lambda, double delta);

/// tau = 1 / (delta^(2m+1) varsigma^2)
double noise_precision(const KernelHyperparams& psi, double delta);

/// (lambda, sigma) -> (theta, tau) at step delta.
ArSubstitution forward_substitute(const KernelHyperparams& psi, double delta);

/// Same map, but taking the noise precision directly instead of sigma.
ArSubstitution substitution_from_lambda_tau(int m, double lambda, double tau, double delta);

/// Simulate n samples. The first m samples are `init` (oldest first; zeros if
/// empty); later ones follow the AR recursion with N(0, 1/tau) innovations.
/// tau = +inf gives a noiseless recursion.
TimeSeries simulate_ar(const ArSubstitution& sub, std::size_t n, std::uint64_t seed,
                       const std::vector<double>& init = {});

}  // namespace bargp
