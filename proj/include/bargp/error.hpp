#pragma once

#include <stdexcept>
#include <string>

namespace bargp {

// Numerical breakdown: a factorization failed or a posterior left its domain.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The MAP estimate has no admissible kernel hyperparameters (e.g. lambda <= 0).
class InfeasibleReversion : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed or missing input data.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace bargp
