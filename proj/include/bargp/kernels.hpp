#pragma once

#include <span>

#include <Eigen/Dense>

#include "bargp/matern.hpp"

// Data-parallel covariance kernels. The top-level functions are OpenMP
// parallel; `serial::` holds the single-threaded reference versions used by
// the tests and the kernel benchmark.
namespace bargp::kernels {

Eigen::MatrixXd gram(std::span<const double> times, const KernelHyperparams& psi);

// rows indexed by `a`, columns by `b`
Eigen::MatrixXd cross_covariance(std::span<const double> a, std::span<const double> b,
                                 const KernelHyperparams& psi);

// Elementwise d K / d log(l).
Eigen::MatrixXd gram_dlog_length(std::span<const double> times, const KernelHyperparams& psi);

// sum_ij A_ij B_ij, i.e. tr(A^T B).
double trace_of_product(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

namespace serial {
Eigen::MatrixXd gram(std::span<const double> times, const KernelHyperparams& psi);
Eigen::MatrixXd cross_covariance(std::span<const double> a, std::span<const double> b,
                                 const KernelHyperparams& psi);
Eigen::MatrixXd gram_dlog_length(std::span<const double> times, const KernelHyperparams& psi);
double trace_of_product(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);
}  // namespace serial

int max_threads();

/// Caps OpenMP (and Eigen) to `n` threads for the lifetime of the guard.
class ScopedThreadLimit {
public:
    explicit ScopedThreadLimit(int n);
    ~ScopedThreadLimit();
    ScopedThreadLimit(const ScopedThreadLimit&) = delete;
    ScopedThreadLimit& operator=(const ScopedThreadLimit&) = delete;

private:
    int previous_;
};

}  // namespace bargp::kernels
