#include "bargp/matern.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "bargp/kernels.hpp"

namespace bargp {

namespace {

void check_order(int m) {
    if (m < 1 || m > kMaxOrder) {
        throw std::invalid_argument("smoothness index m must be in [1, " + std::to_string(kMaxOrder) +
                                    "], got " + std::to_string(m));
    }
}

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

double polynomial_value(const std::vector<double>& b, double r) {
    double acc = 0.0;
    for (auto it = b.rbegin(); it != b.rend(); ++it) acc = acc * r + *it;
    return acc;
}

double polynomial_derivative(const std::vector<double>& b, double r) {
    double acc = 0.0;
    for (std::size_t k = b.size(); k-- > 1;) acc = acc * r + static_cast<double>(k) * b[k];
    return acc;
}

}  // namespace

KernelHyperparams::KernelHyperparams(int m, double sigma, double length_scale)
    : m_(m), sigma_(sigma), length_scale_(length_scale) {
    check_order(m);
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw std::invalid_argument("sigma must be positive");
    if (!(length_scale > 0.0) || !std::isfinite(length_scale)) {
        throw std::invalid_argument("length_scale must be positive");
    }
    lambda_ = lambda_factor(m) / length_scale;
}

KernelHyperparams KernelHyperparams::from_lambda(int m, double sigma, double lambda) {
    check_order(m);
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw std::invalid_argument("lambda must be positive");
    KernelHyperparams psi(m, sigma, lambda_factor(m) / lambda);
    psi.lambda_ = lambda;
    return psi;
}

TimeSeries::TimeSeries(double t0_, double delta_, std::vector<double> values_)
    : t0(t0_), delta(delta_), values(std::move(values_)) {
    if (!(delta > 0.0) || !std::isfinite(delta)) throw std::invalid_argument("delta must be positive");
    if (values.empty()) throw std::invalid_argument("a time series needs at least one value");
}

std::vector<double> TimeSeries::times() const {
    std::vector<double> t(values.size());
    for (std::size_t k = 0; k < t.size(); ++k) t[k] = time(k);
    return t;
}

double lambda_factor(int m) { return std::sqrt(2.0 * m - 1.0); }

std::vector<double> matern_polynomial(int m) {
    check_order(m);
    // k(r) = sigma^2 exp(-r) p!/(2p)! sum_i (p+i)!/(i!(p-i)!) (2r)^(p-i), p = m - 1
    const int p = m - 1;
    std::vector<double> b(static_cast<std::size_t>(p) + 1, 0.0);
    const double lead = factorial(p) / factorial(2 * p);
    for (int i = 0; i <= p; ++i) {
        const int power = p - i;
        b[static_cast<std::size_t>(power)] =
            lead * factorial(p + i) / (factorial(i) * factorial(p - i)) * std::pow(2.0, power);
    }
    return b;
}

double matern_cov(double h, const KernelHyperparams& psi) {
    const double s2 = psi.sigma() * psi.sigma();
    const double r = psi.lambda() * std::abs(h);
    switch (psi.m()) {
        case 1:
            return s2 * std::exp(-r);
        case 2:
            return s2 * (1.0 + r) * std::exp(-r);
        case 3:
            return s2 * (1.0 + r + r * r / 3.0) * std::exp(-r);
        default:
            return s2 * std::exp(-r) * polynomial_value(matern_polynomial(psi.m()), r);
    }
}

double matern_cov_dlog_length(double h, const KernelHyperparams& psi) {
    // r = lambda h with lambda proportional to 1/l, so d r / d log l = -r.
    const double s2 = psi.sigma() * psi.sigma();
    const double r = psi.lambda() * std::abs(h);
    double dk_dr = 0.0;
    switch (psi.m()) {
        case 1:
            dk_dr = -s2 * std::exp(-r);
            break;
        case 2:
            dk_dr = -s2 * r * std::exp(-r);
            break;
        default: {
            const auto b = matern_polynomial(psi.m());
            dk_dr = s2 * std::exp(-r) * (polynomial_derivative(b, r) - polynomial_value(b, r));
        }
    }
    return -r * dk_dr;
}

double psd_constant(int m) {
    check_order(m);
    // Gamma(m) = (m-1)!, Gamma(m - 1/2) from Gamma(1/2) = sqrt(pi), Gamma(x+1) = x Gamma(x)
    double gamma_half = std::sqrt(std::numbers::pi);
    for (int k = 1; k < m; ++k) gamma_half *= (k - 0.5);
    return 2.0 * std::sqrt(std::numbers::pi) * factorial(m - 1) / gamma_half;
}

double matern_psd(double omega, const KernelHyperparams& psi) {
    const double nu = psi.nu();
    const double lam = psi.lambda();
    return psi.sigma() * psi.sigma() * psd_constant(psi.m()) * std::pow(lam, 2.0 * nu) *
           std::pow(lam * lam + omega * omega, -(nu + 0.5));
}

Eigen::MatrixXd gram_matrix(const TimeSeries& ts, const KernelHyperparams& psi) {
    const auto t = ts.times();
    return kernels::gram(t, psi);
}

Eigen::MatrixXd gram_matrix(std::span<const double> times, const KernelHyperparams& psi) {
    return kernels::gram(times, psi);
}

}  // namespace bargp
