#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library routine it is used to check.

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

// Matérn covariance from the general Bessel form
//   sigma^2 2^(1-nu)/Gamma(nu) (sqrt(2 nu) h / l)^nu K_nu(sqrt(2 nu) h / l)
inline double matern_bessel(double h, double nu, double sigma, double length) {
    if (h == 0.0) return sigma * sigma;
    const double z = std::sqrt(2.0 * nu) * std::abs(h) / length;
    return sigma * sigma * std::pow(2.0, 1.0 - nu) / std::tgamma(nu) * std::pow(z, nu) * std::cyl_bessel_k(nu, z);
}

// S(omega) = 2 int_0^inf k(h) cos(omega h) dh by composite Simpson on [0, hmax].
inline double cosine_transform(const std::function<double(double)>& k, double omega, double hmax, int intervals) {
    const double step = hmax / intervals;
    double sum = k(0.0) + k(hmax) * std::cos(omega * hmax);
    for (int i = 1; i < intervals; ++i) {
        const double h = i * step;
        sum += (i % 2 == 1 ? 4.0 : 2.0) * k(h) * std::cos(omega * h);
    }
    return 2.0 * sum * step / 3.0;
}

struct BatchPosterior {
    Eigen::VectorXd mu;
    Eigen::MatrixXd precision;
    double alpha;
    double beta;
};

// Closed-form Normal-Gamma posterior after all N regressions at once:
//   Lambda_N = Lambda_0 + sum ybar ybar^T,  Lambda_N mu_N = Lambda_0 mu_0 + sum ybar y
//   alpha_N = alpha_0 + N/2
//   beta_N = beta_0 + (sum y^2 + mu_0^T Lambda_0 mu_0 - mu_N^T Lambda_N mu_N) / 2
inline BatchPosterior batch_normal_gamma(const std::vector<double>& y, int m, const Eigen::VectorXd& mu0,
                                         const Eigen::MatrixXd& lambda0, double alpha0, double beta0) {
    Eigen::MatrixXd gram = lambda0;
    Eigen::VectorXd moment = lambda0 * mu0;
    double sum_sq = 0.0;
    for (std::size_t k = 0; k < y.size(); ++k) {
        Eigen::VectorXd ybar = Eigen::VectorXd::Zero(m);
        for (int j = 0; j < m; ++j) {
            if (k >= static_cast<std::size_t>(j) + 1) ybar[j] = y[k - 1 - static_cast<std::size_t>(j)];
        }
        gram += ybar * ybar.transpose();
        moment += ybar * y[k];
        sum_sq += y[k] * y[k];
    }
    BatchPosterior post;
    post.precision = gram;
    post.mu = gram.fullPivLu().solve(moment);
    post.alpha = alpha0 + 0.5 * static_cast<double>(y.size());
    post.beta = beta0 + 0.5 * (sum_sq + mu0.dot(lambda0 * mu0) - post.mu.dot(gram * post.mu));
    return post;
}

// Ordinary least squares AR(1) slope through the origin.
inline double ols_ar1(const std::vector<double>& y) {
    double num = 0.0;
    double den = 0.0;
    for (std::size_t k = 1; k < y.size(); ++k) {
        num += y[k] * y[k - 1];
        den += y[k - 1] * y[k - 1];
    }
    return num / den;
}

inline double lag1_autocorrelation(const std::vector<double>& y) {
    double mean = 0.0;
    for (double v : y) mean += v;
    mean /= static_cast<double>(y.size());
    double num = 0.0;
    double den = 0.0;
    for (std::size_t k = 0; k < y.size(); ++k) {
        den += (y[k] - mean) * (y[k] - mean);
        if (k > 0) num += (y[k] - mean) * (y[k - 1] - mean);
    }
    return num / den;
}

inline Eigen::VectorXd central_difference(const std::function<double(const Eigen::VectorXd&)>& f,
                                          const Eigen::VectorXd& x, double h) {
    Eigen::VectorXd g(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        Eigen::VectorXd xp = x;
        Eigen::VectorXd xm = x;
        xp[i] += h;
        xm[i] -= h;
        g[i] = (f(xp) - f(xm)) / (2.0 * h);
    }
    return g;
}

// Least-squares slope of log(y) on log(x).
inline double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const auto n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

inline double relative_error(double got, double want) {
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

}  // namespace oracle
