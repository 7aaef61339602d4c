#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "bargp/kernels.hpp"

namespace {

std::vector<double> random_times(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> u(0.0, 20.0);
    std::vector<double> t(n);
    for (auto& x : t) x = u(gen);
    return t;
}

}  // namespace

TEST(Kernels, ParallelGramMatchesSerial) {
    for (int m = 1; m <= 4; ++m) {
        const bargp::KernelHyperparams psi(m, 1.3, 0.6);
        const auto t = random_times(301, 5 + m);
        EXPECT_EQ(bargp::kernels::gram(t, psi), bargp::kernels::serial::gram(t, psi));
        EXPECT_EQ(bargp::kernels::gram_dlog_length(t, psi), bargp::kernels::serial::gram_dlog_length(t, psi));
    }
}

TEST(Kernels, ParallelCrossCovarianceMatchesSerial) {
    const bargp::KernelHyperparams psi(2, 0.9, 1.4);
    const auto a = random_times(120, 1);
    const auto b = random_times(37, 2);
    const auto k = bargp::kernels::cross_covariance(a, b, psi);
    ASSERT_EQ(k.rows(), 120);
    ASSERT_EQ(k.cols(), 37);
    EXPECT_EQ(k, bargp::kernels::serial::cross_covariance(a, b, psi));
    EXPECT_DOUBLE_EQ(k(3, 5), bargp::matern_cov(a[3] - b[5], psi));
}

TEST(Kernels, TraceOfProductMatchesDense) {
    const bargp::KernelHyperparams psi(1, 1.0, 2.0);
    const auto t = random_times(200, 9);
    const Eigen::MatrixXd a = bargp::kernels::gram(t, psi);
    const Eigen::MatrixXd b = Eigen::MatrixXd::Random(200, 200);
    const double dense = (a * b).trace();
    EXPECT_NEAR(bargp::kernels::trace_of_product(a, b), dense, 1e-10 * std::abs(dense));
    EXPECT_NEAR(bargp::kernels::serial::trace_of_product(a, b), dense, 1e-10 * std::abs(dense));
}

TEST(Kernels, ScopedThreadLimitRestores) {
    const int before = bargp::kernels::max_threads();
    {
        const bargp::kernels::ScopedThreadLimit limit(1);
        EXPECT_EQ(bargp::kernels::max_threads(), 1);
    }
    EXPECT_EQ(bargp::kernels::max_threads(), before);
}
