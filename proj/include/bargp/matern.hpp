#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace bargp {

// Largest smoothness index supported throughout the library. Fixed-capacity
// Eigen types in the filter rely on it.
inline constexpr int kMaxOrder = 4;

/// Matérn hyperparameters for half-integer smoothness nu = m - 1/2.
///
/// `lambda` is always derived from (m, length_scale) as sqrt(2m - 1) / l, so the
/// two can never drift apart.
class KernelHyperparams {
public:
    KernelHyperparams(int m, double sigma, double length_scale);

    static KernelHyperparams from_lambda(int m, double sigma, double lambda);

    [[nodiscard]] int m() const noexcept { return m_; }
    [[nodiscard]] double nu() const noexcept { return m_ - 0.5; }
    [[nodiscard]] double sigma() const noexcept { return sigma_; }
    [[nodiscard]] double length_scale() const noexcept { return length_scale_; }
    [[nodiscard]] double lambda() const noexcept { return lambda_; }

private:
    int m_;
    double sigma_;
    double length_scale_;
    double lambda_;
};

/// Uniformly sampled observations; t_k = t0 + k * delta for k = 0..N-1.
struct TimeSeries {
    TimeSeries(double t0, double delta, std::vector<double> values);

    [[nodiscard]] std::size_t size() const noexcept { return values.size(); }
    [[nodiscard]] double time(std::size_t k) const noexcept { return t0 + static_cast<double>(k) * delta; }
    [[nodiscard]] std::vector<double> times() const;

    double t0;
    double delta;
    std::vector<double> values;
};

// sqrt(2m - 1)
double lambda_factor(int m);

/// Coefficients b_k (ascending powers) of the polynomial P with
/// k(r) = sigma^2 exp(-r) P(r), r = lambda * h, for nu = m - 1/2.
std::vector<double> matern_polynomial(int m);

/// Matérn covariance at lag h >= 0, closed form for half-integer nu.
double matern_cov(double h, const KernelHyperparams& psi);

/// d k / d log(l) at lag h. Used by the marginal-likelihood gradient.
double matern_cov_dlog_length(double h, const KernelHyperparams& psi);

/// Power spectral density S(omega) of the Matérn covariance.
double matern_psd(double omega, const KernelHyperparams& psi);

/// 2 sqrt(pi) Gamma(nu + 1/2) / Gamma(nu), nu = m - 1/2, from the half-integer
/// Gamma recurrence.
double psd_constant(int m);

/// Dense Gram matrix on the series grid.
Eigen::MatrixXd gram_matrix(const TimeSeries& ts, const KernelHyperparams& psi);
Eigen::MatrixXd gram_matrix(std::span<const double> times, const KernelHyperparams& psi);

}  // namespace bargp
