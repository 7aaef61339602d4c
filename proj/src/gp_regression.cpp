#include "bargp/gp_regression.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "bargp/error.hpp"
#include "bargp/kernels.hpp"
#include "bargp/optimize.hpp"

namespace bargp {

namespace {

constexpr double kJitterStart = 1e-10;
constexpr double kJitterMax = 1e-4;

Eigen::Map<const Eigen::VectorXd> as_vector(const std::vector<double>& v) {
    return {v.data(), static_cast<Eigen::Index>(v.size())};
}

double log_det(const Eigen::LLT<Eigen::MatrixXd>& llt) {
    return 2.0 * llt.matrixLLT().diagonal().array().log().sum();
}

}  // namespace

JitteredCholesky factorize_with_jitter(const Eigen::MatrixXd& k, double sigma2) {
    Eigen::MatrixXd work = k;
    for (double level = kJitterStart; level <= kJitterMax * 1.0001; level *= 10.0) {
        const double jitter = level * sigma2;
        work.diagonal() = k.diagonal().array() + jitter;
        JitteredCholesky out{Eigen::LLT<Eigen::MatrixXd>(work), jitter};
        if (out.llt.info() == Eigen::Success && std::isfinite(log_det(out.llt))) return out;
    }
    throw NumericalError("Gram matrix is not positive definite even with jitter 1e-4 sigma^2");
}

double log_marginal_likelihood(const TimeSeries& series, const KernelHyperparams& psi) {
    const auto t = series.times();
    const auto chol = factorize_with_jitter(kernels::gram(t, psi), psi.sigma() * psi.sigma());
    const auto y = as_vector(series.values);
    const Eigen::VectorXd alpha = chol.llt.solve(y);
    const auto n = static_cast<double>(series.size());
    return -0.5 * y.dot(alpha) - 0.5 * log_det(chol.llt) - 0.5 * n * std::log(2.0 * std::numbers::pi);
}

LikelihoodGradient log_marginal_likelihood_with_gradient(const TimeSeries& series, const KernelHyperparams& psi) {
    const auto t = series.times();
    const auto chol = factorize_with_jitter(kernels::gram(t, psi), psi.sigma() * psi.sigma());
    const auto y = as_vector(series.values);
    const Eigen::VectorXd alpha = chol.llt.solve(y);
    const auto n = static_cast<Eigen::Index>(series.size());

    LikelihoodGradient out;
    out.jitter = chol.jitter;
    out.value = -0.5 * y.dot(alpha) - 0.5 * log_det(chol.llt) -
                0.5 * static_cast<double>(n) * std::log(2.0 * std::numbers::pi);

    // The jitter is proportional to sigma^2, so d(K + jI)/d log sigma = 2 (K + jI)
    // and the sigma component collapses to y^T alpha - N.
    out.gradient[0] = y.dot(alpha) - static_cast<double>(n);

    const Eigen::MatrixXd dk = kernels::gram_dlog_length(t, psi);
    const Eigen::MatrixXd k_inv = chol.llt.solve(Eigen::MatrixXd::Identity(n, n));
    out.gradient[1] = 0.5 * alpha.dot(dk * alpha) - 0.5 * kernels::trace_of_product(k_inv, dk);
    return out;
}

MmlResult mml_fit(const TimeSeries& series, int m, const KernelHyperparams& init, const MmlOptions& opts) {
    if (series.size() < 2) throw std::invalid_argument("mml_fit needs at least two observations");
    if (init.m() != m) throw std::invalid_argument("init order does not match m");
    const double scale = 1.0 / static_cast<double>(series.size());

    const DifferentiableFunction objective = [&](const Eigen::VectorXd& x, Eigen::VectorXd& grad) {
        grad.resize(2);
        if (!x.allFinite() || x.cwiseAbs().maxCoeff() > 30.0) {
            grad.setZero();
            return std::numeric_limits<double>::infinity();
        }
        try {
            const KernelHyperparams psi(m, std::exp(x[0]), std::exp(x[1]));
            const auto lg = log_marginal_likelihood_with_gradient(series, psi);
            grad = -scale * lg.gradient;
            return -scale * lg.value;
        } catch (const NumericalError&) {
            grad.setZero();
            return std::numeric_limits<double>::infinity();
        }
    };

    const Eigen::Vector2d x0(std::log(init.sigma()), std::log(init.length_scale()));
    const BfgsResult res = minimize_bfgs(objective, x0, BfgsOptions{opts.max_iterations, opts.gradient_tolerance});
    return MmlResult{KernelHyperparams(m, std::exp(res.x[0]), std::exp(res.x[1])), -res.value / scale,
                     res.gradient.lpNorm<Eigen::Infinity>(), res.converged, res.iterations};
}

PredictiveResult gp_predict(const TimeSeries& train, std::span<const double> test_times,
                            const KernelHyperparams& psi) {
    const auto t = train.times();
    const auto chol = factorize_with_jitter(kernels::gram(t, psi), psi.sigma() * psi.sigma());
    const Eigen::MatrixXd cross = kernels::cross_covariance(t, test_times, psi);
    const Eigen::VectorXd alpha = chol.llt.solve(as_vector(train.values));

    PredictiveResult out;
    out.mean = cross.transpose() * alpha;
    const Eigen::MatrixXd v = chol.llt.matrixL().solve(cross);
    out.cov = kernels::gram(test_times, psi) - v.transpose() * v;
    out.cov = 0.5 * (out.cov + out.cov.transpose()).eval();
    return out;
}

PredictiveResult gp_predict(const TimeSeries& train, const TimeSeries& test, const KernelHyperparams& psi) {
    const auto t = test.times();
    PredictiveResult out = gp_predict(train, std::span<const double>(t), psi);
    out.rmse = rmse(std::span<const double>(out.mean.data(), static_cast<std::size_t>(out.mean.size())),
                    test.values);
    return out;
}

double rmse(std::span<const double> predicted, std::span<const double> targets) {
    if (predicted.size() != targets.size()) throw std::invalid_argument("rmse: length mismatch");
    if (predicted.empty()) throw std::invalid_argument("rmse: empty input");
    double sum = 0.0;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        const double d = predicted[i] - targets[i];
        sum += d * d;
    }
    return std::sqrt(sum / static_cast<double>(predicted.size()));
}

}  // namespace bargp
