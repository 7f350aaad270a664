#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <thread>

#include <fmt/core.h>

#include "kmgwo/harness.hpp"

#ifndef KMGWO_DEFAULT_DATA_DIR
#define KMGWO_DEFAULT_DATA_DIR "data/cec2019"
#endif

namespace kmgwo::harness {

std::string_view to_string(Algorithm a) noexcept { return a == Algorithm::gwo ? "gwo" : "kmgwo"; }

Algorithm parse_algorithm(std::string_view s) {
    if (s == "gwo") return Algorithm::gwo;
    if (s == "kmgwo") return Algorithm::kmgwo;
    throw ConfigError(fmt::format("unknown algorithm '{}' (expected gwo or kmgwo)", s));
}

std::uint64_t derive_seed(std::uint64_t base_seed, std::size_t run_index) noexcept {
    constexpr std::uint64_t gamma = 0x9E3779B97F4A7C15ULL;
    return mix64(base_seed + gamma * (static_cast<std::uint64_t>(run_index) + 1));
}

std::filesystem::path resolve_data_dir(const std::optional<std::filesystem::path>& explicit_dir) {
    if (explicit_dir) return *explicit_dir;
    if (const char* env = std::getenv("KMGWO_DATA_DIR"); env != nullptr && *env != '\0')
        return env;
    return KMGWO_DEFAULT_DATA_DIR;
}

Problem resolve_problem(std::string_view id, const ProblemOptions& options) {
    if (id == "vessel") return problems::make_pressure_vessel(options.penalty, options.constraints);
    if (id == "sphere") return problems::make_sphere();

    std::string_view rest = id;
    if (rest.starts_with("cec19:")) rest.remove_prefix(6);
    if (rest.size() >= 2 && (rest[0] == 'f' || rest[0] == 'F')) {
        int n = 0;
        const auto [ptr, ec] = std::from_chars(rest.data() + 1, rest.data() + rest.size(), n);
        if (ec == std::errc() && ptr == rest.data() + rest.size() && n >= 1 && n <= 10) {
            if (n < 4) return problems::make_cec2019_problem(n);
            const auto data = problems::load_cec2019_data(resolve_data_dir(options.data_dir));
            return problems::make_cec2019_problem(n, &data);
        }
    }
    throw ConfigError(
        fmt::format("unknown problem '{}' (expected vessel, sphere or cec19:f1..cec19:f10)", id));
}

double mean(std::span<const double> v) {
    if (v.empty()) return 0.0;
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double sample_std(std::span<const double> v) {
    if (v.size() < 2) return 0.0;
    const double m = mean(v);
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

std::optional<double> ExperimentSummary::gate_cluster_rate() const {
    if (algorithm != Algorithm::kmgwo || gates.empty()) return std::nullopt;
    const auto took = std::count_if(gates.begin(), gates.end(),
                                    [](const GateTrace& g) { return g.took_cluster(); });
    return static_cast<double>(took) / static_cast<double>(gates.size());
}

ExperimentSummary run_experiment(const ExperimentSpec& spec, const Problem& problem) {
    if (spec.repetitions == 0) throw ConfigError("repetitions must be positive");
    spec.params.validate();

    const std::size_t n = spec.repetitions;
    ExperimentSummary out;
    out.algorithm = spec.algorithm;
    out.problem = spec.problem_id.empty() ? problem.name : spec.problem_id;
    out.seeds.resize(n);
    out.runs.resize(n);
    if (spec.algorithm == Algorithm::kmgwo) out.gates.resize(n);
    for (std::size_t r = 0; r < n; ++r) out.seeds[r] = derive_seed(spec.base_seed, r);

    std::vector<std::exception_ptr> errors(n);
    auto run_one = [&](std::size_t r) {
        KmgwoParams params = spec.params;
        params.gwo.seed = out.seeds[r];
        try {
            if (spec.algorithm == Algorithm::gwo) {
                out.runs[r] = gwo_run(problem, params.gwo);
            } else {
                auto [record, gate] = kmgwo_run(problem, params);
                out.runs[r] = std::move(record);
                out.gates[r] = gate;
            }
        } catch (...) {
            errors[r] = std::current_exception();
        }
    };

    const std::size_t workers = std::clamp<std::size_t>(spec.threads, 1, n);
    if (workers == 1) {
        for (std::size_t r = 0; r < n; ++r) run_one(r);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t r = next++; r < n; r = next++) run_one(r);
            });
    }

    for (std::size_t r = 0; r < n; ++r) {
        if (!errors[r]) continue;
        try {
            std::rethrow_exception(errors[r]);
        } catch (const std::exception& e) {
            throw RuntimeFailure(fmt::format("{} on {}: run {} (seed {}): {}",
                                             to_string(spec.algorithm), out.problem, r,
                                             out.seeds[r], e.what()));
        }
    }

    out.finals.reserve(n);
    for (const auto& run : out.runs) out.finals.push_back(run.final_best.fitness());
    out.avg = mean(out.finals);
    out.std_dev = sample_std(out.finals);
    out.best = *std::min_element(out.finals.begin(), out.finals.end());

    if (spec.output) export_run_records_csv(std::span(&out, 1), *spec.output);
    return out;
}

// ---------------------------------------------------------------------------------------------

std::size_t parse_count(std::string_view key, std::string_view value) {
    return static_cast<std::size_t>(parse_u64(key, value));
}

std::uint64_t parse_u64(std::string_view key, std::string_view value) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (value.empty() || ec != std::errc() || ptr != value.data() + value.size())
        throw ConfigError(fmt::format("{}: '{}' is not a nonnegative integer", key, value));
    return v;
}

double parse_real(std::string_view key, std::string_view value) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (value.empty() || ec != std::errc() || ptr != value.data() + value.size() ||
        !std::isfinite(v))
        throw ConfigError(fmt::format("{}: '{}' is not a real number", key, value));
    return v;
}

bool parse_bool(std::string_view key, std::string_view value) {
    if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
    if (value == "false" || value == "0" || value == "no" || value == "off") return false;
    throw ConfigError(fmt::format("{}: '{}' is not a boolean", key, value));
}

ClusterFitness parse_cluster_fitness(std::string_view value) {
    if (value == "min") return ClusterFitness::min;
    if (value == "mean") return ClusterFitness::mean;
    throw ConfigError(fmt::format("cluster-fitness: '{}' (expected min or mean)", value));
}

}  // namespace kmgwo::harness
