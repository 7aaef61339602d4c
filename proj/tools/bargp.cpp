// bargp: simulate, fit and benchmark Matérn GP hyperparameter estimation.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bargp/bayes_filter.hpp"
#include "bargp/error.hpp"
#include "bargp/gp_regression.hpp"
#include "bargp/pipeline.hpp"
#include "bargp/simulation.hpp"

namespace {

struct CommonFlags {
    int m = 1;
    double delta = 0.1;
    std::uint64_t seed = 0;
    std::string out;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--m", flags.m, "Matérn order, nu = m - 1/2")->check(CLI::Range(1, bargp::kMaxOrder));
    cmd->add_option("--delta", flags.delta, "Time step")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", flags.seed, "Random seed");
    cmd->add_option("--out", flags.out, "Output file (default: stdout)");
}

// Writes to --out when given, stdout otherwise.
class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw bargp::DataError("cannot write " + path);
        }
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

void print_kv(std::ostream& out, const std::string& key, double value) {
    out << key << '=' << bargp::format_double(value) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Matérn GP hyperparameters by Bayesian autoregression"};
    app.require_subcommand(1);

    // simulate
    CommonFlags sim_flags;
    std::size_t sim_n = 0;
    auto* simulate = app.add_subcommand("simulate", "Write one synthetic realization as CSV");
    add_common(simulate, sim_flags);
    simulate->add_option("--n", sim_n, "Number of points")->required()->check(CLI::PositiveNumber);

    // fit
    CommonFlags fit_flags;
    std::string method_name = "bar";
    std::string input;
    std::string column = "y";
    double prior_mu = 0.0;
    double prior_precision = 1e-3;
    double prior_alpha = 2.0;
    double prior_beta = 0.1;
    double init_sigma = 1.0;
    double init_length = 1.0;
    auto* fit = app.add_subcommand("fit", "Estimate kernel hyperparameters from a CSV series");
    add_common(fit, fit_flags);
    fit->add_option("--method", method_name, "bar or mml")->check(CLI::IsMember({"bar", "mml", "BAR", "MML"}));
    fit->add_option("--in", input, "Input CSV")->required()->check(CLI::ExistingFile);
    fit->add_option("--column", column, "Column name or zero-based index");
    fit->add_option("--prior-mu", prior_mu, "Prior mean of every AR coefficient");
    fit->add_option("--prior-precision", prior_precision, "Prior precision scale (times identity)")
        ->check(CLI::PositiveNumber);
    fit->add_option("--prior-alpha", prior_alpha, "Prior Gamma shape")->check(CLI::PositiveNumber);
    fit->add_option("--prior-beta", prior_beta, "Prior Gamma rate")->check(CLI::PositiveNumber);
    fit->add_option("--init-sigma", init_sigma, "MML initial magnitude")->check(CLI::PositiveNumber);
    fit->add_option("--init-length-scale", init_length, "MML initial length scale")->check(CLI::PositiveNumber);

    // bench-runtime
    CommonFlags rt_flags;
    std::vector<std::size_t> n_list{4, 8, 16, 32, 64, 128, 256, 512, 1024};
    int rt_repeats = 10;
    auto* bench_rt = app.add_subcommand("bench-runtime", "Runtime of BAR and MML as a function of N");
    add_common(bench_rt, rt_flags);
    bench_rt->add_option("--n-list", n_list, "Comma-separated list of N")->delimiter(',')->check(CLI::Range(2, 1 << 20));
    bench_rt->add_option("--repeats", rt_repeats, "Realizations per N")->check(CLI::PositiveNumber);

    // bench-rmse
    CommonFlags rmse_flags;
    std::size_t rmse_n = 100;
    int rmse_repeats = 20;
    auto* bench_rmse = app.add_subcommand("bench-rmse", "Test RMSE and runtime of BAR and MML");
    add_common(bench_rmse, rmse_flags);
    bench_rmse->add_option("--n", rmse_n, "Training (and test) length")->check(CLI::Range(2, 1 << 20));
    bench_rmse->add_option("--repeats", rmse_repeats, "Paired realizations")->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*simulate) {
            bargp::SimConfig cfg;
            cfg.m = sim_flags.m;
            cfg.n_points = sim_n;
            cfg.delta = sim_flags.delta;
            cfg.seed = sim_flags.seed;
            Output out(sim_flags.out);
            bargp::write_realization_csv(out.stream(), bargp::generate_realization(cfg));
            return 0;
        }

        if (*fit) {
            const auto series = bargp::load_csv(input, column, fit_flags.delta);
            const int m = fit_flags.m;
            const auto method = bargp::parse_method(method_name);
            Output out(fit_flags.out);
            std::ostream& os = out.stream();
            os << "method=" << bargp::to_string(method) << "\nm=" << m << "\nn_points=" << series.size() << '\n';

            const auto start = std::chrono::steady_clock::now();
            auto elapsed = [&] {
                return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            };

            if (method == bargp::Method::BAR) {
                bargp::NormalGammaBelief prior = bargp::default_prior(m);
                prior.mu.setConstant(prior_mu);
                prior.precision = prior_precision * bargp::SmallMatrix::Identity(m, m);
                prior.alpha = prior_alpha;
                prior.beta = prior_beta;

                const auto belief = bargp::fit_bar(series, m, prior);
                for (int i = 0; i < m; ++i) print_kv(os, "theta_" + std::to_string(i), belief.mu[i]);
                print_kv(os, "alpha", belief.alpha);
                print_kv(os, "beta", belief.beta);
                const auto map = bargp::map_estimates(belief);
                print_kv(os, "tau_map", map.tau);
                try {
                    const auto rev = m == 1 ? bargp::revert_exact_m1(map.theta[0], belief.alpha, belief.beta,
                                                                     series.delta)
                                            : bargp::revert_nls(map, m, series.delta);
                    const double runtime = elapsed();
                    print_kv(os, "sigma", rev.psi.sigma());
                    print_kv(os, "length_scale", rev.psi.length_scale());
                    print_kv(os, "lambda", rev.psi.lambda());
                    print_kv(os, "objective_value", rev.objective_value);
                    os << "iterations=" << rev.iterations << '\n';
                    print_kv(os, "runtime_seconds", runtime);
                    os << "converged=" << (rev.converged ? "true" : "false") << '\n';
                    return rev.converged ? 0 : 3;
                } catch (const bargp::InfeasibleReversion& e) {
                    print_kv(os, "runtime_seconds", elapsed());
                    os << "converged=false\n";
                    std::cerr << "error: infeasible reversion: " << e.what() << '\n';
                    return 3;
                }
            }

            const auto res = bargp::mml_fit(series, m, bargp::KernelHyperparams(m, init_sigma, init_length));
            const double runtime = elapsed();
            print_kv(os, "sigma", res.psi.sigma());
            print_kv(os, "length_scale", res.psi.length_scale());
            print_kv(os, "lambda", res.psi.lambda());
            print_kv(os, "log_likelihood", res.log_likelihood);
            os << "iterations=" << res.iterations << '\n';
            print_kv(os, "runtime_seconds", runtime);
            os << "converged=" << (res.converged ? "true" : "false") << '\n';
            if (!res.converged) std::cerr << "error: marginal likelihood maximization did not converge\n";
            return res.converged ? 0 : 3;
        }

        bargp::BenchConfig cfg;
        std::vector<bargp::BenchRecord> records;
        std::string out_path;
        if (*bench_rt) {
            cfg.m = rt_flags.m;
            cfg.delta = rt_flags.delta;
            cfg.seed = rt_flags.seed;
            cfg.repeats = rt_repeats;
            out_path = rt_flags.out;
            records = bargp::run_bench_runtime(cfg, n_list);
        } else {
            cfg.m = rmse_flags.m;
            cfg.delta = rmse_flags.delta;
            cfg.seed = rmse_flags.seed;
            cfg.repeats = rmse_repeats;
            out_path = rmse_flags.out;
            records = bargp::run_bench_rmse(cfg, rmse_n);
        }
        Output out(out_path);
        bargp::write_bench_csv(out.stream(), records);
        for (const auto& r : records) {
            if (!r.converged) return 3;
        }
        return 0;
    } catch (const bargp::DataError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
