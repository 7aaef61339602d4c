#pragma once

#include <cstdint>
#include <random>

namespace bargp {

/// Seedable generator with fixed variate algorithms. std::mt19937_64's output
/// sequence is pinned by the standard but the std:: distributions are not, so
/// the variates are drawn here.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t bits() { return engine_(); }
    // (0, 1), never exactly 0 or 1
    double uniform();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    double normal();
    // Marsaglia-Tsang; rate parameterization (mean shape / rate)
    double gamma(double shape, double rate);
    double beta(double a, double b);

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace bargp
