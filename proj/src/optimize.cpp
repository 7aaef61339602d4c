#include "bargp/optimize.hpp"

#include <cmath>
#include <stdexcept>

namespace bargp {

BfgsResult minimize_bfgs(const DifferentiableFunction& f, const Eigen::VectorXd& x0, const BfgsOptions& opts) {
    const Eigen::Index n = x0.size();
    BfgsResult res;
    res.x = x0;
    res.gradient = Eigen::VectorXd::Zero(n);
    res.value = f(res.x, res.gradient);
    ++res.evaluations;
    if (!std::isfinite(res.value) || !res.gradient.allFinite()) {
        throw std::domain_error("BFGS: objective is not finite at the initial point");
    }

    Eigen::MatrixXd inv_hessian = Eigen::MatrixXd::Identity(n, n);
    Eigen::VectorXd trial_grad(n);
    bool first_step = true;

    while (res.iterations < opts.max_iterations) {
        if (res.gradient.lpNorm<Eigen::Infinity>() < opts.gradient_tolerance) {
            res.converged = true;
            return res;
        }
        ++res.iterations;

        Eigen::VectorXd direction = -inv_hessian * res.gradient;
        double slope = res.gradient.dot(direction);
        if (!(slope < 0.0)) {
            inv_hessian.setIdentity();
            direction = -res.gradient;
            slope = -res.gradient.squaredNorm();
        }
        // Keep the first (unscaled) step inside a unit trust box.
        double step = 1.0;
        if (first_step) step = std::min(1.0, 1.0 / direction.lpNorm<Eigen::Infinity>());

        Eigen::VectorXd trial;
        double trial_value = 0.0;
        bool accepted = false;
        for (int k = 0; k < 60; ++k) {
            trial = res.x + step * direction;
            trial_value = f(trial, trial_grad);
            ++res.evaluations;
            if (std::isfinite(trial_value) && trial_grad.allFinite() &&
                trial_value <= res.value + 1e-4 * step * slope) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) return res;  // line search exhausted: best so far, not converged

        const Eigen::VectorXd s = trial - res.x;
        const Eigen::VectorXd y = trial_grad - res.gradient;
        const double sy = s.dot(y);
        if (sy > 1e-12 * s.norm() * y.norm()) {
            if (first_step) inv_hessian *= sy / y.squaredNorm();
            const double rho = 1.0 / sy;
            const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(n, n);
            inv_hessian = (eye - rho * s * y.transpose()) * inv_hessian * (eye - rho * y * s.transpose()) +
                          rho * s * s.transpose();
            first_step = false;
        }
        const double previous = res.value;
        res.x = trial;
        res.value = trial_value;
        res.gradient = trial_grad;
        if (std::abs(previous - trial_value) <= 1e-15 * (1.0 + std::abs(trial_value)) &&
            res.gradient.lpNorm<Eigen::Infinity>() < opts.gradient_tolerance) {
            res.converged = true;
            return res;
        }
    }
    res.converged = res.gradient.lpNorm<Eigen::Infinity>() < opts.gradient_tolerance;
    return res;
}

}  // namespace bargp
