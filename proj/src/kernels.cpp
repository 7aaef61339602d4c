#include "bargp/kernels.hpp"

#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace bargp::kernels {

// Entries are independent, so the parallel and serial Gram/cross-covariance
// matrices are bitwise identical. Only the trace reduction reorders sums.

Eigen::MatrixXd gram(std::span<const double> times, const KernelHyperparams& psi) {
    const auto n = static_cast<Eigen::Index>(times.size());
    Eigen::MatrixXd k(n, n);
#pragma omp parallel for schedule(dynamic, 16)
    for (Eigen::Index j = 0; j < n; ++j) {
        k(j, j) = psi.sigma() * psi.sigma();
        for (Eigen::Index i = j + 1; i < n; ++i) {
            const double v = matern_cov(times[static_cast<std::size_t>(i)] - times[static_cast<std::size_t>(j)], psi);
            k(i, j) = v;
            k(j, i) = v;
        }
    }
    return k;
}

Eigen::MatrixXd cross_covariance(std::span<const double> a, std::span<const double> b,
                                 const KernelHyperparams& psi) {
    const auto rows = static_cast<Eigen::Index>(a.size());
    const auto cols = static_cast<Eigen::Index>(b.size());
    Eigen::MatrixXd k(rows, cols);
#pragma omp parallel for schedule(static)
    for (Eigen::Index j = 0; j < cols; ++j) {
        for (Eigen::Index i = 0; i < rows; ++i) {
            k(i, j) = matern_cov(a[static_cast<std::size_t>(i)] - b[static_cast<std::size_t>(j)], psi);
        }
    }
    return k;
}

Eigen::MatrixXd gram_dlog_length(std::span<const double> times, const KernelHyperparams& psi) {
    const auto n = static_cast<Eigen::Index>(times.size());
    Eigen::MatrixXd d(n, n);
#pragma omp parallel for schedule(dynamic, 16)
    for (Eigen::Index j = 0; j < n; ++j) {
        d(j, j) = 0.0;
        for (Eigen::Index i = j + 1; i < n; ++i) {
            const double v =
                matern_cov_dlog_length(times[static_cast<std::size_t>(i)] - times[static_cast<std::size_t>(j)], psi);
            d(i, j) = v;
            d(j, i) = v;
        }
    }
    return d;
}

double trace_of_product(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    const Eigen::Index cols = a.cols();
    double total = 0.0;
#pragma omp parallel for reduction(+ : total) schedule(static)
    for (Eigen::Index j = 0; j < cols; ++j) total += a.col(j).dot(b.col(j));
    return total;
}

namespace serial {

Eigen::MatrixXd gram(std::span<const double> times, const KernelHyperparams& psi) {
    const auto n = static_cast<Eigen::Index>(times.size());
    Eigen::MatrixXd k(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        k(j, j) = psi.sigma() * psi.sigma();
        for (Eigen::Index i = j + 1; i < n; ++i) {
            const double v = matern_cov(times[static_cast<std::size_t>(i)] - times[static_cast<std::size_t>(j)], psi);
            k(i, j) = v;
            k(j, i) = v;
        }
    }
    return k;
}

Eigen::MatrixXd cross_covariance(std::span<const double> a, std::span<const double> b,
                                 const KernelHyperparams& psi) {
    Eigen::MatrixXd k(static_cast<Eigen::Index>(a.size()), static_cast<Eigen::Index>(b.size()));
    for (Eigen::Index j = 0; j < k.cols(); ++j) {
        for (Eigen::Index i = 0; i < k.rows(); ++i) {
            k(i, j) = matern_cov(a[static_cast<std::size_t>(i)] - b[static_cast<std::size_t>(j)], psi);
        }
    }
    return k;
}

Eigen::MatrixXd gram_dlog_length(std::span<const double> times, const KernelHyperparams& psi) {
    const auto n = static_cast<Eigen::Index>(times.size());
    Eigen::MatrixXd d(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        d(j, j) = 0.0;
        for (Eigen::Index i = j + 1; i < n; ++i) {
            const double v =
                matern_cov_dlog_length(times[static_cast<std::size_t>(i)] - times[static_cast<std::size_t>(j)], psi);
            d(i, j) = v;
            d(j, i) = v;
        }
    }
    return d;
}

double trace_of_product(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    double total = 0.0;
    for (Eigen::Index j = 0; j < a.cols(); ++j) total += a.col(j).dot(b.col(j));
    return total;
}

}  // namespace serial

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

ScopedThreadLimit::ScopedThreadLimit(int n) : previous_(max_threads()) {
#ifdef _OPENMP
    omp_set_num_threads(n);
#endif
    Eigen::setNbThreads(n);
}

ScopedThreadLimit::~ScopedThreadLimit() {
#ifdef _OPENMP
    omp_set_num_threads(previous_);
#endif
    Eigen::setNbThreads(previous_);
}

}  // namespace bargp::kernels
