#pragma once

#include <vector>

#include "bargp/matern.hpp"

namespace bargp {

/// Continuous-time SDE  d^m f + sum_n a_n d^n f = w(t)  with white-noise
/// spectral density varsigma2. `a` is lowest order first; a_m = 1 is implicit.
struct SdeCoefficients {
    int m = 0;
    std::vector<double> a;
    double varsigma2 = 0.0;
};

/// a_n = C(m, n) lambda^(m - n), n = 0..m-1. varsigma2 is left at zero.
SdeCoefficients sde_coefficients(int m, double lambda);

/// varsigma^2 = sigma^2 lambda^(2 nu) 2 sqrt(pi) Gamma(nu + 1/2) / Gamma(nu).
double white_noise_density(const KernelHyperparams& psi);

/// Coefficients and noise density together.
SdeCoefficients sde_from_hyperparams(const KernelHyperparams& psi);

/// |H(i omega)|^2 for H(i omega) = (lambda + i omega)^(-m).
double transfer_power(double omega, int m, double lambda);

double binomial(int n, int k);

}  // namespace bargp
