#pragma once

#include <functional>

#include <Eigen/Dense>

namespace bargp {

// Objective returning f(x) and writing the gradient. Non-finite values mark
// points outside the domain; the line search backs off from them.
using DifferentiableFunction = std::function<double(const Eigen::VectorXd& x, Eigen::VectorXd& grad)>;

struct BfgsOptions {
    int max_iterations = 1000;
    double gradient_tolerance = 1e-6;  // infinity norm
};

struct BfgsResult {
    Eigen::VectorXd x;
    double value = 0.0;
    Eigen::VectorXd gradient;
    bool converged = false;
    int iterations = 0;
    int evaluations = 0;
};

/// Dense BFGS with a backtracking Armijo line search.
BfgsResult minimize_bfgs(const DifferentiableFunction& f, const Eigen::VectorXd& x0, const BfgsOptions& opts = {});

}  // namespace bargp
