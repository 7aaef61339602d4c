#include "bargp/simulation.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "bargp/ar.hpp"
#include "bargp/error.hpp"
#include "bargp/random.hpp"

namespace bargp {

void validate(const SimConfig& cfg) {
    if (cfg.m < 1 || cfg.m > kMaxOrder) throw std::invalid_argument("m out of range");
    if (cfg.n_points == 0) throw std::invalid_argument("n_points must be positive");
    if (!(cfg.delta > 0.0)) throw std::invalid_argument("delta must be positive");
    if (!(cfg.lambda_shape_a > 0.0) || !(cfg.lambda_shape_b > 0.0)) {
        throw std::invalid_argument("Beta shapes must be positive");
    }
    if (!(cfg.tau_shape > 0.0) || !(cfg.tau_rate > 0.0)) throw std::invalid_argument("Gamma parameters must be positive");
    if (!(cfg.freq_range.first < cfg.freq_range.second) || !(cfg.phase_range.first < cfg.phase_range.second)) {
        throw std::invalid_argument("frequency and phase ranges must be nonempty");
    }
}

Realization generate_realization(const SimConfig& cfg) {
    validate(cfg);
    Rng rng(cfg.seed);
    GroundTruth truth;
    // Always draw all four so overrides do not shift the other variates.
    truth.lambda = rng.beta(cfg.lambda_shape_a, cfg.lambda_shape_b);
    truth.tau = rng.gamma(cfg.tau_shape, cfg.tau_rate);
    truth.frequency = rng.uniform(cfg.freq_range.first, cfg.freq_range.second);
    truth.phase = rng.uniform(cfg.phase_range.first, cfg.phase_range.second);
    if (cfg.fixed_lambda) truth.lambda = *cfg.fixed_lambda;
    if (cfg.fixed_tau) truth.tau = *cfg.fixed_tau;

    const auto sub = substitution_from_lambda_tau(cfg.m, truth.lambda, truth.tau, cfg.delta);
    TimeSeries series = simulate_ar(sub, cfg.n_points, rng.bits());
    for (std::size_t k = 0; k < series.size(); ++k) {
        series.values[k] +=
            cfg.amplitude * std::sin(2.0 * std::numbers::pi * truth.frequency * series.time(k) + truth.phase);
    }
    return Realization{std::move(series), truth};
}

std::pair<TimeSeries, TimeSeries> split_series(const TimeSeries& ts, std::size_t n_train) {
    if (n_train == 0 || n_train >= ts.size()) throw std::invalid_argument("split point must leave both parts nonempty");
    std::vector<double> head(ts.values.begin(), ts.values.begin() + static_cast<std::ptrdiff_t>(n_train));
    std::vector<double> tail(ts.values.begin() + static_cast<std::ptrdiff_t>(n_train), ts.values.end());
    return {TimeSeries(ts.t0, ts.delta, std::move(head)), TimeSeries(ts.time(n_train), ts.delta, std::move(tail))};
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

std::string trim(std::string s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

}  // namespace

TimeSeries load_csv(const std::filesystem::path& path, const ColumnSelector& column, double delta) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());

    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        for (auto& h : split_fields(t)) header.push_back(trim(h));
        break;
    }
    if (header.empty()) throw DataError(path.string() + ": no header line");

    std::size_t index = 0;
    if (const auto* name = std::get_if<std::string>(&column)) {
        std::size_t i = 0;
        for (; i < header.size() && header[i] != *name; ++i) {}
        const bool numeric = !name->empty() && name->find_first_not_of("0123456789") == std::string::npos;
        if (i == header.size() && numeric) {
            i = std::stoull(*name);
            if (i >= header.size()) {
                throw DataError(path.string() + ": column index " + *name + " out of range (" +
                                std::to_string(header.size()) + " columns)");
            }
        } else if (i == header.size()) {
            std::string available;
            for (const auto& h : header) available += (available.empty() ? "" : ", ") + h;
            throw DataError(path.string() + ": no column '" + *name + "' (available: " + available + ")");
        }
        index = i;
    } else {
        index = std::get<std::size_t>(column);
        if (index >= header.size()) {
            throw DataError(path.string() + ": column index " + std::to_string(index) + " out of range (" +
                            std::to_string(header.size()) + " columns)");
        }
    }

    std::vector<double> values;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        const auto fields = split_fields(t);
        if (index >= fields.size()) {
            throw DataError(path.string() + ": line " + std::to_string(line_no) + " has too few fields");
        }
        const std::string cell = trim(fields[index]);
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
        if (ec != std::errc() || ptr != cell.data() + cell.size() || cell.empty()) {
            throw DataError(path.string() + ": line " + std::to_string(line_no) + ": '" + cell + "' is not a number");
        }
        values.push_back(v);
    }
    if (values.empty()) throw DataError(path.string() + ": no data rows");
    return TimeSeries(0.0, delta, std::move(values));
}

std::string format_double(double x) {
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    if (ec != std::errc()) throw std::runtime_error("format_double failed");
    return std::string(buf.data(), ptr);
}

void write_realization_csv(std::ostream& out, const Realization& r) {
    out << "# schema=1\n";
    out << "# lambda=" << format_double(r.truth.lambda) << ",tau=" << format_double(r.truth.tau)
        << ",frequency=" << format_double(r.truth.frequency) << ",phase=" << format_double(r.truth.phase) << "\n";
    out << "t,y\n";
    for (std::size_t k = 0; k < r.series.size(); ++k) {
        out << format_double(r.series.time(k)) << ',' << format_double(r.series.values[k]) << '\n';
    }
}

}  // namespace bargp
