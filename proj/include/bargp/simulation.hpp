#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <variant>

#include "bargp/matern.hpp"

namespace bargp {

struct SimConfig {
    int m = 1;
    std::size_t n_points = 100;
    double delta = 0.1;
    double lambda_shape_a = 10.0;  // Beta(a, b)
    double lambda_shape_b = 4.0;
    double tau_shape = 10.0;  // Gamma(shape, rate)
    double tau_rate = 1.0;
    std::pair<double, double> freq_range{0.0, 2.0};
    std::pair<double, double> phase_range{0.0, 3.14159265358979323846};
    double amplitude = 1.0;
    // Override the sampled ground truth (e.g. tau = inf for a noiseless run).
    std::optional<double> fixed_lambda;
    std::optional<double> fixed_tau;
    std::uint64_t seed = 0;
};

void validate(const SimConfig& cfg);

struct GroundTruth {
    double lambda = 0.0;
    double tau = 0.0;
    double frequency = 0.0;
    double phase = 0.0;
};

struct Realization {
    TimeSeries series;
    GroundTruth truth;
};

/// AR realization (zero init) for sampled (lambda, tau) plus the deterministic
/// mean amplitude * sin(2 pi freq t + phase).
Realization generate_realization(const SimConfig& cfg);

/// [0, n_train) and [n_train, N) with the time grid carried over.
std::pair<TimeSeries, TimeSeries> split_series(const TimeSeries& ts, std::size_t n_train);

using ColumnSelector = std::variant<std::string, std::size_t>;

/// One numeric column of a comma-separated file with a header line. Lines
/// starting with '#' and blank lines are skipped. t0 is 0. A column name
/// made of digits that matches no header is taken as a zero-based index.
TimeSeries load_csv(const std::filesystem::path& path, const ColumnSelector& column, double delta);

/// Shortest representation that parses back to the same double.
std::string format_double(double x);

/// "# schema=1", a ground-truth comment line, then "t,y" rows.
void write_realization_csv(std::ostream& out, const Realization& r);

}  // namespace bargp
