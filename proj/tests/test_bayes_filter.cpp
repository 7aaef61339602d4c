#include <algorithm>
#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "bargp/bayes_filter.hpp"
#include "bargp/error.hpp"
#include "oracles.hpp"

using bargp::NormalGammaBelief;
using bargp::SmallMatrix;
using bargp::SmallVector;

namespace {

NormalGammaBelief belief_1d(double mu, double precision, double alpha, double beta) {
    NormalGammaBelief b;
    b.mu = SmallVector::Constant(1, mu);
    b.precision = SmallMatrix::Constant(1, 1, precision);
    b.alpha = alpha;
    b.beta = beta;
    return b;
}

bargp::TimeSeries ar1_series(double theta, double tau, std::size_t n, std::uint64_t seed) {
    bargp::ArSubstitution sub;
    sub.m = 1;
    sub.theta = SmallVector::Constant(1, theta);
    sub.tau = tau;
    sub.delta = 0.1;
    return bargp::simulate_ar(sub, n, seed);
}

}  // namespace

TEST(NgUpdate, HandExample) {
    bargp::ObservationBuffer buffer(1);
    buffer.push(1.0);
    const auto post = bargp::ng_update(belief_1d(0.0, 1.0, 2.0, 1.0), buffer, 1.0);
    EXPECT_NEAR(post.mu[0], 0.5, 1e-15);
    EXPECT_NEAR(post.precision(0, 0), 2.0, 1e-15);
    EXPECT_NEAR(post.alpha, 2.5, 1e-15);
    EXPECT_NEAR(post.beta, 1.25, 1e-15);
}

TEST(NgUpdate, ZeroBufferOnlyMovesGammaPart) {
    NormalGammaBelief prior;
    prior.mu = SmallVector(2);
    prior.mu << 0.3, -0.2;
    prior.precision = SmallMatrix(2, 2);
    prior.precision << 2.0, 0.5, 0.5, 1.0;
    prior.alpha = 3.0;
    prior.beta = 0.7;
    const bargp::ObservationBuffer buffer(2);
    const auto post = bargp::ng_update(prior, buffer, 1.5);
    EXPECT_NEAR((post.mu - prior.mu).norm(), 0.0, 1e-15);
    EXPECT_EQ(post.precision, prior.precision);
    EXPECT_DOUBLE_EQ(post.alpha, 3.5);
    EXPECT_NEAR(post.beta, 0.7 + 0.5 * 1.5 * 1.5, 1e-14);
}

TEST(NgUpdate, PerfectPredictionLeavesRateUnchanged) {
    NormalGammaBelief prior;
    prior.mu = SmallVector(2);
    prior.mu << 1.2, -0.4;
    prior.precision = 1e8 * SmallMatrix::Identity(2, 2);
    prior.alpha = 2.0;
    prior.beta = 1.0;
    bargp::ObservationBuffer buffer(2);
    buffer.push(0.7);
    buffer.push(-0.3);
    const double y = prior.mu.dot(buffer.entries());
    const auto post = bargp::ng_update(prior, buffer, y);
    EXPECT_NEAR(post.beta - prior.beta, 0.0, 1e-6);
}

TEST(NgUpdate, NegativeRateIsReported) {
    // beta increment is nonnegative in exact arithmetic; force a tiny prior rate and a huge prior
    // precision so rounding can only be caught, never clamped.
    const auto prior = belief_1d(1.0, 1e300, 2.0, 1e-300);
    bargp::ObservationBuffer buffer(1);
    buffer.push(1e10);
    try {
        const auto post = bargp::ng_update(prior, buffer, 1e10 + 1.0);
        EXPECT_GT(post.beta, 0.0);
    } catch (const bargp::NumericalError&) {
        SUCCEED();
    }
}

TEST(NgUpdate, PrecisionStaysSymmetricPositiveDefinite) {
    const auto ts = ar1_series(0.8, 100.0, 400, 5);
    NormalGammaBelief belief = bargp::default_prior(3);
    bargp::ObservationBuffer buffer(3);
    for (double y : ts.values) {
        belief = bargp::ng_update(belief, buffer, y);
        buffer.push(y);
        ASSERT_EQ(belief.precision, belief.precision.transpose());
        ASSERT_EQ(Eigen::LLT<SmallMatrix>(belief.precision).info(), Eigen::Success);
    }
}

TEST(FitBar, EmptyUpdateReturnsPrior) {
    const auto prior = bargp::default_prior(2);
    const auto belief = bargp::fit_bar(bargp::TimeSeries(0.0, 0.1, {0.0}), 2, prior);
    // a single zero observation from a zero buffer changes only alpha
    EXPECT_EQ(belief.mu, prior.mu);
    EXPECT_EQ(belief.precision, prior.precision);
    EXPECT_DOUBLE_EQ(belief.alpha, prior.alpha + 0.5);
    EXPECT_DOUBLE_EQ(belief.beta, prior.beta);
}

TEST(FitBar, RejectsMismatchedPrior) {
    EXPECT_THROW(bargp::fit_bar(bargp::TimeSeries(0.0, 0.1, {1.0, 2.0}), 2, bargp::default_prior(1)),
                 std::invalid_argument);
    auto bad = bargp::default_prior(1);
    bad.beta = 0.0;
    EXPECT_THROW(bargp::fit_bar(bargp::TimeSeries(0.0, 0.1, {1.0}), 1, bad), std::invalid_argument);
}

TEST(FitBar, SequentialEqualsBatchPosterior) {
    for (int m = 1; m <= 3; ++m) {
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const auto ts = bargp::simulate_ar(bargp::substitution_from_lambda_tau(m, 2.0, 50.0, 0.1), 300, seed,
                                               std::vector<double>(static_cast<std::size_t>(m), 0.3));
            NormalGammaBelief prior = bargp::default_prior(m);
            prior.mu.setConstant(0.1);
            const auto seq = bargp::fit_bar(ts, m, prior);
            const auto batch = oracle::batch_normal_gamma(ts.values, m, prior.mu, prior.precision, prior.alpha,
                                                          prior.beta);
            EXPECT_LT((seq.mu - batch.mu).norm(), 1e-10 * batch.mu.norm());
            EXPECT_LT((Eigen::MatrixXd(seq.precision) - batch.precision).norm(), 1e-10 * batch.precision.norm());
            EXPECT_DOUBLE_EQ(seq.alpha, batch.alpha);
            EXPECT_LT(oracle::relative_error(seq.beta, batch.beta), 1e-10);
        }
    }
}

TEST(FitBar, PosteriorMeanApproachesOls) {
    const auto ts = ar1_series(0.8, 100.0, 1000, 21);
    const auto post = bargp::fit_bar(ts, 1, bargp::default_prior(1));
    EXPECT_NEAR(post.mu[0], oracle::ols_ar1(ts.values), 1e-4);
    EXPECT_LT(std::abs(post.mu[0] - 0.8), 0.05);
    const double tau = bargp::map_estimates(post).tau;
    EXPECT_LT(std::abs(tau - 100.0) / 100.0, 0.2);
}

TEST(FitBar, PosteriorErrorShrinksWithN) {
    // median absolute error over seeds roughly halves when N quadruples
    auto median_error = [](std::size_t n) {
        std::vector<double> err;
        for (std::uint64_t seed = 0; seed < 41; ++seed) {
            const auto post = bargp::fit_bar(ar1_series(0.8, 100.0, n, 1000 + seed), 1, bargp::default_prior(1));
            err.push_back(std::abs(post.mu[0] - 0.8));
        }
        std::nth_element(err.begin(), err.begin() + 20, err.end());
        return err[20];
    };
    const double small = median_error(500);
    const double large = median_error(8000);
    EXPECT_LT(large, small / 2.0);
}

TEST(LogEvidence, MatchesClosedFormMarginal) {
    for (int m = 1; m <= 2; ++m) {
        const auto ts = bargp::simulate_ar(bargp::substitution_from_lambda_tau(m, 1.0, 30.0, 0.1), 120, 8);
        const auto prior = bargp::default_prior(m);
        const auto batch =
            oracle::batch_normal_gamma(ts.values, m, prior.mu, prior.precision, prior.alpha, prior.beta);
        const double n = static_cast<double>(ts.size());
        const double want = -0.5 * n * std::log(2.0 * std::numbers::pi) +
                            0.5 * (std::log(Eigen::MatrixXd(prior.precision).determinant()) -
                                   std::log(batch.precision.determinant())) +
                            prior.alpha * std::log(prior.beta) - batch.alpha * std::log(batch.beta) +
                            std::lgamma(batch.alpha) - std::lgamma(prior.alpha);
        EXPECT_NEAR(bargp::log_evidence(ts, m, prior), want, 1e-8 * std::abs(want));
    }
}

TEST(MapEstimates, Examples) {
    const auto map1 = bargp::map_estimates(belief_1d(0.8, 1.0, 3.0, 0.2));
    EXPECT_DOUBLE_EQ(map1.theta[0], 0.8);
    EXPECT_NEAR(map1.tau, 10.0, 1e-14);

    NormalGammaBelief b2;
    b2.mu = SmallVector(2);
    b2.mu << 2.2, -1.21;
    b2.precision = SmallMatrix::Identity(2, 2);
    b2.alpha = 11.0;
    b2.beta = 0.1;
    const auto map2 = bargp::map_estimates(b2);
    EXPECT_EQ(map2.theta, b2.mu);
    EXPECT_NEAR(map2.tau, 100.0, 1e-12);

    EXPECT_THROW(bargp::map_estimates(belief_1d(0.8, 1.0, 1.0, 0.2)), std::domain_error);
}
