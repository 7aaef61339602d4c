#include "bargp/ar.hpp"

#include <cmath>
#include <stdexcept>

#include "bargp/random.hpp"

namespace bargp {

namespace {

void check_delta(double delta) {
    if (!(delta > 0.0) || !std::isfinite(delta)) throw std::invalid_argument("delta must be positive");
}

double int_power(double x, int p) {
    double r = 1.0;
    for (int i = 0; i < p; ++i) r *= x;
    return r;
}

}  // namespace

std::vector<double> difference_coefficients(const SdeCoefficients& sde, double delta) {
    check_delta(delta);
    const int m = sde.m;
    // delta^m sum_{n=0..m} (a_n / delta^n) sum_{j=0..n} (-1)^(n-j) C(n,j) f_{k+j}
    std::vector<double> c(static_cast<std::size_t>(m) + 1, 0.0);
    for (int n = 0; n <= m; ++n) {
        const double a_n = n == m ? 1.0 : sde.a[static_cast<std::size_t>(n)];
        const double scale = a_n * int_power(delta, m - n);
        for (int j = 0; j <= n; ++j) {
            const double sign = ((n - j) % 2 == 0) ? 1.0 : -1.0;
            c[static_cast<std::size_t>(j)] += scale * sign * binomial(n, j);
        }
    }
    return c;
}

SmallVector ar_coefficients(int m, double lambda, double delta) {
    const auto c = difference_coefficients(sde_coefficients(m, lambda), delta);
    SmallVector theta(m);
    // f_{k+m} = -sum_{j<m} c_j f_{k+j}; reverse to newest first
    for (int i = 0; i < m; ++i) theta[i] = -c[static_cast<std::size_t>(m - 1 - i)];
    return theta;
}

double noise_precision(const KernelHyperparams& psi, double delta) {
    check_delta(delta);
    return 1.0 / (int_power(delta, 2 * psi.m() + 1) * white_noise_density(psi));
}

ArSubstitution forward_substitute(const KernelHyperparams& psi, double delta) {
    check_delta(delta);
    ArSubstitution sub;
    sub.m = psi.m();
    sub.theta = ar_coefficients(psi.m(), psi.lambda(), delta);
    sub.tau = noise_precision(psi, delta);
    sub.delta = delta;
    return sub;
}

ArSubstitution substitution_from_lambda_tau(int m, double lambda, double tau, double delta) {
    check_delta(delta);
    if (!(tau > 0.0)) throw std::invalid_argument("tau must be positive");
    ArSubstitution sub;
    sub.m = m;
    sub.theta = ar_coefficients(m, lambda, delta);
    sub.tau = tau;
    sub.delta = delta;
    return sub;
}

TimeSeries simulate_ar(const ArSubstitution& sub, std::size_t n, std::uint64_t seed,
                       const std::vector<double>& init) {
    if (n == 0) throw std::invalid_argument("simulate_ar needs n >= 1");
    const auto m = static_cast<std::size_t>(sub.m);
    if (!init.empty() && init.size() != m) throw std::invalid_argument("init must hold exactly m values");
    if (!(sub.tau > 0.0)) throw std::invalid_argument("tau must be positive");

    const double scale = std::isinf(sub.tau) ? 0.0 : 1.0 / std::sqrt(sub.tau);
    Rng rng(seed);
    std::vector<double> y(n, 0.0);
    for (std::size_t k = 0; k < std::min(n, m); ++k) y[k] = init.empty() ? 0.0 : init[k];
    for (std::size_t k = m; k < n; ++k) {
        double next = 0.0;
        for (std::size_t j = 0; j < m; ++j) next += sub.theta[static_cast<Eigen::Index>(j)] * y[k - 1 - j];
        y[k] = next + scale * rng.normal();
    }
    return TimeSeries(0.0, sub.delta, std::move(y));
}

}  // namespace bargp
