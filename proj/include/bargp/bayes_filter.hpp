#pragma once

#include "bargp/ar.hpp"
#include "bargp/matern.hpp"

namespace bargp {

/// Normal-Gamma belief over AR coefficients and noise precision:
///   theta | tau ~ N(mu, (tau Lambda)^-1),  tau ~ Gamma(alpha, beta)  (rate)
struct NormalGammaBelief {
    SmallVector mu;
    SmallMatrix precision;
    double alpha = 0.0;
    double beta = 0.0;

    [[nodiscard]] int order() const noexcept { return static_cast<int>(mu.size()); }
};

/// mu = 0, Lambda = 1e-3 I, alpha = 2, beta = 0.1.
NormalGammaBelief default_prior(int m);

/// Checks shapes, alpha > 0, beta > 0 and positive definiteness of Lambda.
void validate(const NormalGammaBelief& belief);

/// The last m observations, newest first, zero until filled.
class ObservationBuffer {
public:
    explicit ObservationBuffer(int m);

    void push(double y);
    [[nodiscard]] const SmallVector& entries() const noexcept { return entries_; }
    [[nodiscard]] int order() const noexcept { return static_cast<int>(entries_.size()); }

private:
    SmallVector entries_;
};

/// One exact conjugate update with the pair (buffer, y_next). Throws
/// NumericalError if the new precision is not positive definite or beta leaves
/// (0, inf).
NormalGammaBelief ng_update(const NormalGammaBelief& belief, const ObservationBuffer& buffer, double y_next);

/// Folds ng_update over every sample of the series, starting from a zero
/// buffer, so the result has absorbed series.size() updates.
NormalGammaBelief fit_bar(const TimeSeries& series, int m, const NormalGammaBelief& prior);

/// Log of the Student-t one-step predictive density p(y_next | past).
double log_predictive(const NormalGammaBelief& belief, const ObservationBuffer& buffer, double y_next);

/// Sum of one-step log predictives over the series (diagnostic only).
double log_evidence(const TimeSeries& series, int m, const NormalGammaBelief& prior);

struct MapEstimate {
    SmallVector theta;
    double tau = 0.0;
};

/// (mu, (alpha - 1) / beta); requires alpha > 1.
MapEstimate map_estimates(const NormalGammaBelief& belief);

}  // namespace bargp
