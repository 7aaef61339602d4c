#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "bargp/bayes_filter.hpp"
#include "bargp/gp_regression.hpp"
#include "bargp/reversion.hpp"

namespace bargp {

struct BarEstimate {
    NormalGammaBelief belief;
    MapEstimate map;
    ReversionResult reversion;
};

/// Filter, take the MAP, revert: exactly for m = 1, by NLS otherwise.
BarEstimate estimate_bar(const TimeSeries& series, int m, const NormalGammaBelief& prior,
                         const NlsOptions& nls = {}, const ExactReversionOptions& exact = {});

enum class Method { BAR, MML };

std::string to_string(Method method);
Method parse_method(const std::string& name);

struct BenchRecord {
    Method method = Method::BAR;
    int m = 1;
    std::size_t n_points = 0;
    std::uint64_t seed = 0;
    double runtime_seconds = 0.0;
    std::optional<double> rmse;
    bool converged = false;
};

inline constexpr const char* kBenchCsvHeader = "method,m,n_points,seed,runtime_seconds,rmse,converged";

void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& records);
std::vector<BenchRecord> read_bench_csv(std::istream& in);

struct BenchConfig {
    int m = 1;
    double delta = 0.1;
    std::uint64_t seed = 0;
    int repeats = 10;
    // A timed fit is repeated until this much wall time has accumulated and the
    // mean per call is reported; sub-microsecond fits are otherwise dominated
    // by clock overhead.
    double min_timing_seconds = 1e-3;
    // default_prior(m) when unset
    std::optional<NormalGammaBelief> prior;
    NlsOptions nls;
    MmlOptions mml;
};

/// Runtime vs N. One realization per (N, repeat) with seed = seed + repeat;
/// both methods fit the same series. Timing excludes generation and I/O and
/// runs single-threaded after one discarded warm-up per method and N.
std::vector<BenchRecord> run_bench_runtime(const BenchConfig& cfg, const std::vector<std::size_t>& n_list);

/// RMSE vs runtime. Each repeat simulates 2n points; the first n train, the
/// next n are the test series.
std::vector<BenchRecord> run_bench_rmse(const BenchConfig& cfg, std::size_t n);

}  // namespace bargp
