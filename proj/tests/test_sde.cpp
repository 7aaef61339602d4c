#include <cmath>
#include <complex>

#include <gtest/gtest.h>

#include "bargp/sde.hpp"

TEST(SdeCoefficients, Examples) {
    EXPECT_EQ(bargp::sde_coefficients(1, 2.0).a, (std::vector<double>{2.0}));
    EXPECT_EQ(bargp::sde_coefficients(2, 1.0).a, (std::vector<double>{1.0, 2.0}));
    EXPECT_EQ(bargp::sde_coefficients(2, 0.5).a, (std::vector<double>{0.25, 1.0}));
}

TEST(SdeCoefficients, RejectsInvalid) {
    EXPECT_THROW(bargp::sde_coefficients(0, 1.0), std::invalid_argument);
    EXPECT_THROW(bargp::sde_coefficients(2, 0.0), std::invalid_argument);
}

TEST(SdeCoefficients, BinomialExpansionOfCharacteristicPolynomial) {
    // (s + lambda)^m evaluated directly vs sum a_n s^n + s^m
    for (int m = 1; m <= 4; ++m) {
        const double lambda = 0.7;
        const auto sde = bargp::sde_coefficients(m, lambda);
        for (double s : {-1.3, 0.2, 2.5}) {
            double poly = std::pow(s, m);
            for (int n = 0; n < m; ++n) poly += sde.a[static_cast<std::size_t>(n)] * std::pow(s, n);
            EXPECT_NEAR(poly, std::pow(s + lambda, m), 1e-12);
        }
    }
}

TEST(WhiteNoiseDensity, Examples) {
    using bargp::KernelHyperparams;
    EXPECT_NEAR(bargp::white_noise_density(KernelHyperparams::from_lambda(1, 1.0, 1.0)), 2.0, 1e-14);
    EXPECT_NEAR(bargp::white_noise_density(KernelHyperparams::from_lambda(2, 1.0, 1.0)), 4.0, 1e-14);
    EXPECT_NEAR(bargp::white_noise_density(KernelHyperparams::from_lambda(1, 2.0, 3.0)), 24.0, 1e-12);
}

TEST(WhiteNoiseDensity, GeneralFormMatchesClosedForms) {
    for (double sigma : {0.3, 1.0, 2.2}) {
        for (double lambda : {0.4, 1.0, 3.7}) {
            const double s2 = sigma * sigma;
            EXPECT_NEAR(bargp::white_noise_density(bargp::KernelHyperparams::from_lambda(1, sigma, lambda)),
                        2.0 * s2 * lambda, 1e-12 * 2.0 * s2 * lambda);
            const double want2 = 4.0 * s2 * lambda * lambda * lambda;
            EXPECT_NEAR(bargp::white_noise_density(bargp::KernelHyperparams::from_lambda(2, sigma, lambda)), want2,
                        1e-12 * want2);
            const double want3 = 16.0 / 3.0 * s2 * std::pow(lambda, 5);
            EXPECT_NEAR(bargp::white_noise_density(bargp::KernelHyperparams::from_lambda(3, sigma, lambda)), want3,
                        1e-12 * want3);
        }
    }
}

TEST(TransferPower, MatchesDirectComplexEvaluation) {
    for (int m = 1; m <= 4; ++m) {
        for (double w : {0.0, 0.5, 3.0}) {
            std::complex<double> denom = 1.0;
            for (int i = 0; i < m; ++i) denom *= std::complex<double>(1.2, w);
            EXPECT_NEAR(bargp::transfer_power(w, m, 1.2), 1.0 / std::norm(denom), 1e-14);
        }
    }
}

TEST(TransferPower, NoiseShapedSpectrumEqualsPsd) {
    for (int m = 1; m <= 3; ++m) {
        const auto psi = bargp::KernelHyperparams::from_lambda(m, 0.8, 1.7);
        for (double w : {0.0, 0.1, 1.0, 10.0, 100.0}) {
            const double s = bargp::transfer_power(w, m, psi.lambda()) * bargp::white_noise_density(psi);
            EXPECT_NEAR(s, bargp::matern_psd(w, psi), 1e-12 * bargp::matern_psd(w, psi));
        }
    }
}

TEST(Binomial, SmallValues) {
    EXPECT_EQ(bargp::binomial(4, 2), 6.0);
    EXPECT_EQ(bargp::binomial(5, 0), 1.0);
    EXPECT_EQ(bargp::binomial(5, 5), 1.0);
    EXPECT_EQ(bargp::binomial(3, 4), 0.0);
}
