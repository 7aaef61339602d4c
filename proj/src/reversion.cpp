#include "bargp/reversion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "bargp/error.hpp"
#include "bargp/sde.hpp"

namespace bargp {

ReversionResult revert_exact_m1(double theta0, double alpha, double beta, double delta,
                                const ExactReversionOptions& opts) {
    if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
    if (!(alpha > 1.0)) throw InfeasibleReversion("alpha <= 1: MAP of tau undefined");
    if (!(beta > 0.0)) throw InfeasibleReversion("beta must be positive");

    double one_minus = 1.0 - theta0;
    if (!(one_minus > 0.0)) {
        if (!opts.clamp_lambda) {
            throw InfeasibleReversion("theta0 = " + std::to_string(theta0) + " >= 1 implies lambda <= 0");
        }
        one_minus = *opts.clamp_lambda * delta;
    }
    const double lambda = one_minus / delta;
    const double sigma = std::sqrt(beta / (2.0 * (alpha - 1.0) * one_minus * delta * delta));
    return ReversionResult{KernelHyperparams::from_lambda(1, sigma, lambda), 0.0, true, 0};
}

namespace {

// d theta / d lambda, newest first
SmallVector ar_coefficients_dlambda(int m, double lambda, double delta) {
    std::vector<double> dc(static_cast<std::size_t>(m) + 1, 0.0);
    for (int n = 0; n < m; ++n) {
        const int p = m - n;
        double dpow = p;  // d/dlambda lambda^p
        for (int i = 0; i < p - 1; ++i) dpow *= lambda;
        double dpow_delta = 1.0;
        for (int i = 0; i < p; ++i) dpow_delta *= delta;
        const double dscale = binomial(m, n) * dpow * dpow_delta;
        for (int j = 0; j <= n; ++j) {
            const double sign = ((n - j) % 2 == 0) ? 1.0 : -1.0;
            dc[static_cast<std::size_t>(j)] += dscale * sign * binomial(n, j);
        }
    }
    SmallVector d(m);
    for (int i = 0; i < m; ++i) d[i] = -dc[static_cast<std::size_t>(m - 1 - i)];
    return d;
}

double radical_inverse(int index, int base) {
    double result = 0.0;
    double f = 1.0 / base;
    while (index > 0) {
        result += f * (index % base);
        index /= base;
        f /= base;
    }
    return result;
}

struct StartOutcome {
    Eigen::Vector2d x = Eigen::Vector2d::Zero();
    double squared_error = std::numeric_limits<double>::infinity();
    bool converged = false;
    int iterations = 0;
};

constexpr double kLogBound = 50.0;
constexpr double kMaxStep = 2.0;

bool in_bounds(const Eigen::Vector2d& x) {
    return x.allFinite() && std::abs(x[0]) <= kLogBound && std::abs(x[1]) <= kLogBound;
}

// Levenberg-Marquardt on one barrier stage, in split coordinates. There the
// Jacobian is block diagonal, so the tau row (which grows like
// delta^-(2m+1)) neither swamps the theta rows nor injects its rounding noise
// into moves along lambda. The step still comes from a Householder QR of the
// row-sorted augmented Jacobian.
bool minimize_stage(const ReversionObjective& f, double barrier_weight, Eigen::Vector2d& z, int& iterations,
                    const NlsOptions& opts) {
    double damping = 1e-3;
    double fz = f.split_value(z);
    if (!std::isfinite(fz)) return false;
    const Eigen::Vector2d pull_direction = 0.5 * barrier_weight * f.split_barrier_direction();

    while (iterations < opts.max_iterations) {
        ++iterations;
        const Eigen::VectorXd r = f.split_residuals(z);
        const Eigen::MatrixXd jac = f.split_jacobian(z);

        const Eigen::Index rows = jac.rows() + 2;
        Eigen::MatrixXd a(rows, 2);
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(rows);
        a.topRows(jac.rows()) = jac;
        rhs.head(jac.rows()) = r;
        a.bottomRows(2) = std::sqrt(damping) * Eigen::Matrix2d::Identity();

        std::vector<Eigen::Index> order(static_cast<std::size_t>(rows));
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
            return a.row(i).squaredNorm() > a.row(j).squaredNorm();
        });
        Eigen::MatrixXd sorted(rows, 2);
        Eigen::VectorXd sorted_rhs(rows);
        for (Eigen::Index i = 0; i < rows; ++i) {
            sorted.row(i) = a.row(order[static_cast<std::size_t>(i)]);
            sorted_rhs[i] = rhs[order[static_cast<std::size_t>(i)]];
        }

        // Minimize |r + A d|^2 - w b^T d:  R^T R d = -R^T Q^T r + (w/2) b
        const Eigen::HouseholderQR<Eigen::MatrixXd> qr(sorted);
        const Eigen::VectorXd qtr = (qr.householderQ().transpose() * sorted_rhs).head(2);
        const Eigen::Matrix2d upper = qr.matrixQR().topRows(2).triangularView<Eigen::Upper>();
        const Eigen::Vector2d pull = upper.transpose().triangularView<Eigen::Lower>().solve(pull_direction);
        Eigen::Vector2d step = upper.triangularView<Eigen::Upper>().solve(pull - qtr);
        const double length = step.lpNorm<Eigen::Infinity>();
        if (length > kMaxStep) step *= kMaxStep / length;

        const Eigen::Vector2d candidate = z + step;
        const double fc = step.allFinite() && in_bounds(f.from_split(candidate))
                              ? f.split_value(candidate)
                              : std::numeric_limits<double>::infinity();
        if (std::isfinite(fc) && fc < fz) {
            z = candidate;
            fz = fc;
            damping = std::max(damping / 10.0, 1e-30);
            if (step.lpNorm<Eigen::Infinity>() <= 1e-15 * (1.0 + z.lpNorm<Eigen::Infinity>())) return true;
        } else {
            damping *= 10.0;
            // No damping level yields descent: stationary to working precision.
            if (damping > 1e16) return true;
        }
    }
    return f.gradient(f.from_split(z)).lpNorm<Eigen::Infinity>() <= opts.gradient_tolerance;
}

}  // namespace

ReversionObjective::ReversionObjective(const MapEstimate& target, int m, double delta, double barrier_weight,
                                       bool scale_tau_residual)
    : theta_target_(target.theta),
      tau_target_(target.tau),
      m_(m),
      delta_(delta),
      barrier_weight_(barrier_weight),
      tau_scale_(scale_tau_residual ? std::pow(delta, 2 * m + 1) : 1.0) {
    if (m < 1 || m > kMaxOrder) throw std::invalid_argument("order m out of range");
    if (target.theta.size() != m) throw std::invalid_argument("MAP theta must have m entries");
    if (!(target.tau > 0.0) || !std::isfinite(target.tau)) throw std::invalid_argument("MAP tau must be positive");
    if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
    log_tau_offset_ = -(2.0 * m + 1.0) * std::log(delta) - std::log(psd_constant(m));
}

double ReversionObjective::model_tau(const Eigen::Vector2d& x) const {
    return std::exp(log_tau_offset_ - 2.0 * x[1] - (2.0 * m_ - 1.0) * x[0]);
}

Eigen::VectorXd ReversionObjective::residuals(const Eigen::Vector2d& x) const {
    const double lambda = std::exp(x[0]);
    const SmallVector theta = ar_coefficients(m_, lambda, delta_);
    Eigen::VectorXd r(m_ + 1);
    for (int i = 0; i < m_; ++i) r[i] = theta_target_[i] - theta[i];
    r[m_] = tau_scale_ * (tau_target_ - model_tau(x));
    return r;
}

Eigen::MatrixXd ReversionObjective::jacobian(const Eigen::Vector2d& x) const {
    const double lambda = std::exp(x[0]);
    const SmallVector dtheta = ar_coefficients_dlambda(m_, lambda, delta_);
    const double tau = model_tau(x);
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(m_ + 1, 2);
    for (int i = 0; i < m_; ++i) j(i, 0) = -lambda * dtheta[i];
    j(m_, 0) = tau_scale_ * (2.0 * m_ - 1.0) * tau;
    j(m_, 1) = tau_scale_ * 2.0 * tau;
    return j;
}

Eigen::Vector2d ReversionObjective::to_split(const Eigen::Vector2d& x) const {
    return {x[0], log_tau_offset_ - 2.0 * x[1] - (2.0 * m_ - 1.0) * x[0]};
}

Eigen::Vector2d ReversionObjective::from_split(const Eigen::Vector2d& z) const {
    return {z[0], 0.5 * (log_tau_offset_ - z[1] - (2.0 * m_ - 1.0) * z[0])};
}

Eigen::VectorXd ReversionObjective::split_residuals(const Eigen::Vector2d& z) const {
    const SmallVector theta = ar_coefficients(m_, std::exp(z[0]), delta_);
    Eigen::VectorXd r(m_ + 1);
    for (int i = 0; i < m_; ++i) r[i] = theta_target_[i] - theta[i];
    r[m_] = tau_scale_ * (tau_target_ - std::exp(z[1]));
    return r;
}

Eigen::MatrixXd ReversionObjective::split_jacobian(const Eigen::Vector2d& z) const {
    const double lambda = std::exp(z[0]);
    const SmallVector dtheta = ar_coefficients_dlambda(m_, lambda, delta_);
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(m_ + 1, 2);
    for (int i = 0; i < m_; ++i) j(i, 0) = -lambda * dtheta[i];
    j(m_, 1) = -tau_scale_ * std::exp(z[1]);
    return j;
}

Eigen::Vector2d ReversionObjective::split_barrier_direction() const { return {1.5 - m_, -0.5}; }

double ReversionObjective::split_value(const Eigen::Vector2d& z) const {
    return split_residuals(z).squaredNorm() - barrier_weight_ * split_barrier_direction().dot(z) -
           barrier_weight_ * 0.5 * log_tau_offset_;
}

double ReversionObjective::squared_error(const Eigen::Vector2d& x) const { return residuals(x).squaredNorm(); }

double ReversionObjective::value(const Eigen::Vector2d& x) const {
    return squared_error(x) - barrier_weight_ * (x[0] + x[1]);
}

Eigen::Vector2d ReversionObjective::gradient(const Eigen::Vector2d& x) const {
    return 2.0 * jacobian(x).transpose() * residuals(x) - Eigen::Vector2d::Constant(barrier_weight_);
}

std::vector<Eigen::Vector2d> multistart_points(int count) {
    std::vector<Eigen::Vector2d> points;
    points.reserve(static_cast<std::size_t>(std::max(count, 0)));
    for (int i = 1; i <= count; ++i) {
        points.emplace_back(-2.0 + 4.0 * radical_inverse(i, 2), -2.0 + 4.0 * radical_inverse(i, 3));
    }
    return points;
}

ReversionResult revert_nls(const MapEstimate& map, int m, double delta, const NlsOptions& opts) {
    if (m < 2) throw std::invalid_argument("revert_nls needs m >= 2; use revert_exact_m1 for m = 1");
    if (opts.max_iterations < 1 || opts.multistart_count < 1 || !(opts.gradient_tolerance > 0.0) ||
        opts.barrier_weight_schedule.empty()) {
        throw std::invalid_argument("invalid NLS options");
    }
    for (const double w : opts.barrier_weight_schedule) {
        if (!(w > 0.0)) throw std::invalid_argument("barrier weights must be positive");
    }

    const ReversionObjective base(map, m, delta, 0.0, opts.scale_tau_residual);
    const auto starts = multistart_points(opts.multistart_count);
    std::vector<StartOutcome> outcomes(starts.size());

#pragma omp parallel for schedule(dynamic, 1)
    for (std::size_t s = 0; s < starts.size(); ++s) {
        ReversionObjective f = base;
        StartOutcome out;
        Eigen::Vector2d z = base.to_split(starts[s]);
        bool ok = true;
        for (const double w : opts.barrier_weight_schedule) {
            f.set_barrier_weight(w);
            ok = minimize_stage(f, w, z, out.iterations, opts);
            if (!ok) break;
        }
        out.x = base.from_split(z);
        out.converged = ok;
        out.squared_error = base.squared_error(out.x);
        if (!std::isfinite(out.squared_error)) out.squared_error = std::numeric_limits<double>::infinity();
        outcomes[s] = out;
    }

    std::size_t best = 0;
    for (std::size_t s = 1; s < outcomes.size(); ++s) {
        if (outcomes[s].squared_error < outcomes[best].squared_error) best = s;
    }
    const StartOutcome& win = outcomes[best];
    if (!std::isfinite(win.squared_error)) throw NumericalError("every NLS multistart diverged");

    return ReversionResult{KernelHyperparams::from_lambda(m, std::exp(win.x[1]), std::exp(win.x[0])),
                           win.squared_error, win.converged, win.iterations};
}

}  // namespace bargp
