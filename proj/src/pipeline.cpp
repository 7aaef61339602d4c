#include "bargp/pipeline.hpp"

#include <chrono>
#include <sstream>
#include <stdexcept>

#include "bargp/error.hpp"
#include "bargp/kernels.hpp"
#include "bargp/simulation.hpp"

namespace bargp {

BarEstimate estimate_bar(const TimeSeries& series, int m, const NormalGammaBelief& prior, const NlsOptions& nls,
                         const ExactReversionOptions& exact) {
    NormalGammaBelief belief = fit_bar(series, m, prior);
    MapEstimate map = map_estimates(belief);
    ReversionResult reversion = m == 1 ? revert_exact_m1(map.theta[0], belief.alpha, belief.beta, series.delta, exact)
                                       : revert_nls(map, m, series.delta, nls);
    return BarEstimate{std::move(belief), std::move(map), std::move(reversion)};
}

std::string to_string(Method method) { return method == Method::BAR ? "BAR" : "MML"; }

Method parse_method(const std::string& name) {
    if (name == "BAR" || name == "bar") return Method::BAR;
    if (name == "MML" || name == "mml") return Method::MML;
    throw std::invalid_argument("unknown method '" + name + "' (expected bar or mml)");
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
    out << "# schema=1\n" << kBenchCsvHeader << '\n';
    for (const auto& r : records) {
        out << to_string(r.method) << ',' << r.m << ',' << r.n_points << ',' << r.seed << ','
            << format_double(r.runtime_seconds) << ',' << (r.rmse ? format_double(*r.rmse) : std::string()) << ','
            << (r.converged ? "true" : "false") << '\n';
    }
}

std::vector<BenchRecord> read_bench_csv(std::istream& in) {
    std::vector<BenchRecord> records;
    std::string line;
    bool schema_seen = false;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line.front() == '#') {
            if (line == "# schema=1") schema_seen = true;
            continue;
        }
        if (!header_seen) {
            if (line != kBenchCsvHeader) throw DataError("unexpected bench CSV header: " + line);
            header_seen = true;
            continue;
        }
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) f.push_back(cell);
        if (line.back() == ',') f.emplace_back();
        if (f.size() != 7) throw DataError("bench CSV row must have 7 fields: " + line);
        BenchRecord r;
        r.method = parse_method(f[0]);
        r.m = std::stoi(f[1]);
        r.n_points = std::stoull(f[2]);
        r.seed = std::stoull(f[3]);
        r.runtime_seconds = std::stod(f[4]);
        if (!f[5].empty()) r.rmse = std::stod(f[5]);
        if (f[6] != "true" && f[6] != "false") throw DataError("converged must be true or false: " + line);
        r.converged = f[6] == "true";
        records.push_back(r);
    }
    if (!schema_seen) throw DataError("bench CSV lacks '# schema=1'");
    if (!header_seen) throw DataError("bench CSV lacks a header line");
    return records;
}

namespace {

using Clock = std::chrono::steady_clock;

template <class F>
double time_per_call(F&& fn, double min_seconds) {
    long calls = 0;
    const auto start = Clock::now();
    double elapsed = 0.0;
    do {
        fn();
        ++calls;
        elapsed = std::chrono::duration<double>(Clock::now() - start).count();
    } while (elapsed < min_seconds);
    return elapsed / static_cast<double>(calls);
}

struct FitOutcome {
    std::optional<KernelHyperparams> psi;
    bool converged = false;
    double runtime_seconds = 0.0;
};

FitOutcome timed_bar(const TimeSeries& train, const BenchConfig& cfg, const NormalGammaBelief& prior) {
    FitOutcome out;
    out.runtime_seconds = time_per_call(
        [&] {
            try {
                const auto est = estimate_bar(train, cfg.m, prior, cfg.nls);
                out.psi = est.reversion.psi;
                out.converged = est.reversion.converged;
            } catch (const std::exception&) {
                out.psi.reset();
                out.converged = false;
            }
        },
        cfg.min_timing_seconds);
    return out;
}

FitOutcome timed_mml(const TimeSeries& train, const BenchConfig& cfg) {
    FitOutcome out;
    const KernelHyperparams init(cfg.m, 1.0, 1.0);
    out.runtime_seconds = time_per_call(
        [&] {
            try {
                const auto fit = mml_fit(train, cfg.m, init, cfg.mml);
                out.psi = fit.psi;
                out.converged = fit.converged;
            } catch (const std::exception&) {
                out.psi.reset();
                out.converged = false;
            }
        },
        cfg.min_timing_seconds);
    return out;
}

BenchRecord make_record(Method method, const BenchConfig& cfg, std::size_t n, std::uint64_t seed,
                        const FitOutcome& fit) {
    BenchRecord r;
    r.method = method;
    r.m = cfg.m;
    r.n_points = n;
    r.seed = seed;
    r.runtime_seconds = fit.runtime_seconds;
    r.converged = fit.converged && fit.psi.has_value();
    return r;
}

SimConfig sim_config(const BenchConfig& cfg, std::size_t n, std::uint64_t seed) {
    SimConfig sim;
    sim.m = cfg.m;
    sim.n_points = n;
    sim.delta = cfg.delta;
    sim.seed = seed;
    return sim;
}

void check(const BenchConfig& cfg) {
    if (cfg.m < 1 || cfg.m > kMaxOrder) throw std::invalid_argument("m out of range");
    if (cfg.repeats < 1) throw std::invalid_argument("repeats must be positive");
    if (!(cfg.delta > 0.0)) throw std::invalid_argument("delta must be positive");
    if (cfg.prior && cfg.prior->order() != cfg.m) throw std::invalid_argument("prior order does not match m");
}

}  // namespace

std::vector<BenchRecord> run_bench_runtime(const BenchConfig& cfg, const std::vector<std::size_t>& n_list) {
    check(cfg);
    if (n_list.empty()) throw std::invalid_argument("n_list must not be empty");
    const NormalGammaBelief prior = cfg.prior.value_or(default_prior(cfg.m));
    const kernels::ScopedThreadLimit single_thread(1);

    std::vector<BenchRecord> records;
    for (const std::size_t n : n_list) {
        if (n < 2) throw std::invalid_argument("bench-runtime needs N >= 2 (MML requires two points)");
        bool warmed = false;
        for (int rep = 0; rep < cfg.repeats; ++rep) {
            const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(rep);
            const auto data = generate_realization(sim_config(cfg, n, seed));
            if (!warmed) {
                BenchConfig once = cfg;
                once.min_timing_seconds = 0.0;
                (void)timed_bar(data.series, once, prior);
                (void)timed_mml(data.series, once);
                warmed = true;
            }
            records.push_back(make_record(Method::BAR, cfg, n, seed, timed_bar(data.series, cfg, prior)));
            records.push_back(make_record(Method::MML, cfg, n, seed, timed_mml(data.series, cfg)));
        }
    }
    return records;
}

std::vector<BenchRecord> run_bench_rmse(const BenchConfig& cfg, std::size_t n) {
    check(cfg);
    if (n < 2) throw std::invalid_argument("bench-rmse needs n >= 2");
    const NormalGammaBelief prior = cfg.prior.value_or(default_prior(cfg.m));
    const kernels::ScopedThreadLimit single_thread(1);

    std::vector<BenchRecord> records;
    for (int rep = 0; rep < cfg.repeats; ++rep) {
        const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(rep);
        const auto data = generate_realization(sim_config(cfg, 2 * n, seed));
        const auto [train, test] = split_series(data.series, n);
        if (rep == 0) {
            BenchConfig once = cfg;
            once.min_timing_seconds = 0.0;
            (void)timed_bar(train, once, prior);
            (void)timed_mml(train, once);
        }
        for (const Method method : {Method::BAR, Method::MML}) {
            const FitOutcome fit = method == Method::BAR ? timed_bar(train, cfg, prior) : timed_mml(train, cfg);
            BenchRecord r = make_record(method, cfg, n, seed, fit);
            if (fit.psi) {
                try {
                    r.rmse = gp_predict(train, test, *fit.psi).rmse;
                } catch (const NumericalError&) {
                    r.converged = false;
                }
            }
            records.push_back(r);
        }
    }
    return records;
}

}  // namespace bargp
