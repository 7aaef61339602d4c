#include "bargp/sde.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace bargp {

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double c = 1.0;
    for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return c;
}

SdeCoefficients sde_coefficients(int m, double lambda) {
    if (m < 1) throw std::invalid_argument("SDE order m must be >= 1");
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw std::invalid_argument("lambda must be positive");
    SdeCoefficients sde;
    sde.m = m;
    sde.a.resize(static_cast<std::size_t>(m));
    for (int n = 0; n < m; ++n) {
        double power = 1.0;
        for (int i = 0; i < m - n; ++i) power *= lambda;
        sde.a[static_cast<std::size_t>(n)] = binomial(m, n) * power;
    }
    return sde;
}

double white_noise_density(const KernelHyperparams& psi) {
    double lambda_power = 1.0;
    for (int i = 0; i < 2 * psi.m() - 1; ++i) lambda_power *= psi.lambda();
    return psi.sigma() * psi.sigma() * lambda_power * psd_constant(psi.m());
}

SdeCoefficients sde_from_hyperparams(const KernelHyperparams& psi) {
    auto sde = sde_coefficients(psi.m(), psi.lambda());
    sde.varsigma2 = white_noise_density(psi);
    return sde;
}

double transfer_power(double omega, int m, double lambda) {
    const std::complex<double> h = std::pow(std::complex<double>(lambda, omega), -m);
    return std::norm(h);
}

}  // namespace bargp
