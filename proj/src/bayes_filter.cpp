#include "bargp/bayes_filter.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "bargp/error.hpp"

namespace bargp {

NormalGammaBelief default_prior(int m) {
    if (m < 1 || m > kMaxOrder) throw std::invalid_argument("order m out of range");
    NormalGammaBelief prior;
    prior.mu = SmallVector::Zero(m);
    prior.precision = 1e-3 * SmallMatrix::Identity(m, m);
    prior.alpha = 2.0;
    prior.beta = 0.1;
    return prior;
}

void validate(const NormalGammaBelief& belief) {
    const int m = belief.order();
    if (m < 1 || m > kMaxOrder) throw std::invalid_argument("belief order out of range");
    if (belief.precision.rows() != m || belief.precision.cols() != m) {
        throw std::invalid_argument("precision matrix must be m x m");
    }
    if (!(belief.alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
    if (!(belief.beta > 0.0)) throw std::invalid_argument("beta must be positive");
    Eigen::LLT<SmallMatrix> llt(belief.precision);
    if (llt.info() != Eigen::Success) throw std::invalid_argument("precision matrix must be positive definite");
}

ObservationBuffer::ObservationBuffer(int m) : entries_(SmallVector::Zero(m)) {
    if (m < 1 || m > kMaxOrder) throw std::invalid_argument("buffer order out of range");
}

void ObservationBuffer::push(double y) {
    for (Eigen::Index j = entries_.size() - 1; j > 0; --j) entries_[j] = entries_[j - 1];
    entries_[0] = y;
}

NormalGammaBelief ng_update(const NormalGammaBelief& belief, const ObservationBuffer& buffer, double y_next) {
    const SmallVector& ybar = buffer.entries();
    if (ybar.size() != belief.mu.size()) throw std::invalid_argument("buffer and belief orders differ");

    NormalGammaBelief next;
    next.precision = belief.precision + ybar * ybar.transpose();
    next.precision = 0.5 * (next.precision + next.precision.transpose()).eval();

    const SmallVector prior_moment = belief.precision * belief.mu;
    Eigen::LLT<SmallMatrix> llt(next.precision);
    if (llt.info() != Eigen::Success) throw NumericalError("posterior precision is not positive definite");
    next.mu = llt.solve(ybar * y_next + prior_moment);

    next.alpha = belief.alpha + 0.5;
    next.beta = belief.beta + 0.5 * (y_next * y_next - next.mu.dot(next.precision * next.mu) +
                                     belief.mu.dot(prior_moment));
    if (!(next.beta > 0.0) || !std::isfinite(next.beta)) {
        throw NumericalError("posterior rate beta left (0, inf): " + std::to_string(next.beta));
    }
    return next;
}

NormalGammaBelief fit_bar(const TimeSeries& series, int m, const NormalGammaBelief& prior) {
    validate(prior);
    if (prior.order() != m) throw std::invalid_argument("prior order does not match m");
    NormalGammaBelief belief = prior;
    ObservationBuffer buffer(m);
    for (const double y : series.values) {
        belief = ng_update(belief, buffer, y);
        buffer.push(y);
    }
    return belief;
}

double log_predictive(const NormalGammaBelief& belief, const ObservationBuffer& buffer, double y_next) {
    // y | past ~ Student-t(2 alpha, mu^T ybar, beta (1 + ybar^T Lambda^-1 ybar) / alpha)
    const SmallVector& ybar = buffer.entries();
    const double location = belief.mu.dot(ybar);
    const double leverage = ybar.dot(belief.precision.llt().solve(ybar));
    const double scale2 = belief.beta * (1.0 + leverage) / belief.alpha;
    const double dof = 2.0 * belief.alpha;
    const double z2 = (y_next - location) * (y_next - location) / scale2;
    return std::lgamma(0.5 * (dof + 1.0)) - std::lgamma(0.5 * dof) - 0.5 * std::log(dof * std::numbers::pi * scale2) -
           0.5 * (dof + 1.0) * std::log1p(z2 / dof);
}

double log_evidence(const TimeSeries& series, int m, const NormalGammaBelief& prior) {
    validate(prior);
    NormalGammaBelief belief = prior;
    ObservationBuffer buffer(m);
    double total = 0.0;
    for (const double y : series.values) {
        total += log_predictive(belief, buffer, y);
        belief = ng_update(belief, buffer, y);
        buffer.push(y);
    }
    return total;
}

MapEstimate map_estimates(const NormalGammaBelief& belief) {
    if (!(belief.alpha > 1.0)) {
        throw std::domain_error("MAP of tau needs alpha > 1, got alpha = " + std::to_string(belief.alpha));
    }
    return MapEstimate{belief.mu, (belief.alpha - 1.0) / belief.beta};
}

}  // namespace bargp
