#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kmgwo/gwo.hpp"
#include "kmgwo/kmgwo.hpp"
#include "kmgwo/problems.hpp"

namespace kmgwo::harness {

enum class Algorithm { gwo, kmgwo };

std::string_view to_string(Algorithm a) noexcept;
Algorithm parse_algorithm(std::string_view s);

/// Seed of run `run_index`: mix64(base_seed + gamma * (run_index + 1)) with gamma the odd
/// golden-ratio constant. Both steps are bijections, so seeds within one experiment never collide.
std::uint64_t derive_seed(std::uint64_t base_seed, std::size_t run_index) noexcept;

// --- problem resolution ----------------------------------------------------------------------

struct ProblemOptions {
    std::optional<std::filesystem::path> data_dir;
    double penalty = problems::default_penalty;
    problems::ConstraintSet constraints = problems::ConstraintSet::standard;
};

/// Data directory: explicit value, then $KMGWO_DATA_DIR, then the copy shipped with the sources.
std::filesystem::path resolve_data_dir(const std::optional<std::filesystem::path>& explicit_dir);

/// Accepts "vessel", "sphere", "cec19:fN" (N = 1..10) and the bare "fN".
/// Loads CEC2019 data only when the function needs it. Unknown ids raise ConfigError.
Problem resolve_problem(std::string_view id, const ProblemOptions& options);

// --- experiments -----------------------------------------------------------------------------

struct ExperimentSpec {
    Algorithm algorithm = Algorithm::gwo;
    std::string problem_id;
    std::size_t repetitions = 30;
    std::uint64_t base_seed = 0;
    KmgwoParams params;  // params.gwo.seed is replaced per run
    std::optional<std::filesystem::path> output;  // per-run convergence CSV
    std::size_t threads = 1;
};

struct ExperimentSummary {
    Algorithm algorithm = Algorithm::gwo;
    std::string problem;
    std::vector<std::uint64_t> seeds;
    std::vector<RunRecord> runs;
    std::vector<GateTrace> gates;  // kmgwo only
    Vector finals;
    double avg = 0.0;
    double std_dev = 0.0;  // sample (n - 1) standard deviation
    double best = 0.0;

    std::size_t repetitions() const noexcept { return finals.size(); }
    /// Fraction of runs whose gate took a cluster; empty for gwo.
    std::optional<double> gate_cluster_rate() const;
};

double mean(std::span<const double> v);
double sample_std(std::span<const double> v);

/// Runs `repetitions` seeded runs (optionally on several threads; results do not depend on the
/// thread count). Failures are rethrown as RuntimeFailure naming the run's seed.
ExperimentSummary run_experiment(const ExperimentSpec& spec, const Problem& problem);

// --- statistics ------------------------------------------------------------------------------

/// Two-sided Wilcoxon rank-sum (Mann-Whitney) p-value, midranks for ties.
/// Exact null distribution when n_a + n_b <= 12, otherwise the normal approximation with tie
/// and continuity corrections. p = min(1, 2 * smaller tail).
double wilcoxon_rank_sum(std::span<const double> a, std::span<const double> b);

/// Two-sided Wilcoxon signed-rank p-value on paired differences (zeros dropped).
/// Exact for up to 20 nonzero differences, normal approximation beyond.
double wilcoxon_signed_rank(std::span<const double> differences);

// --- CSV -------------------------------------------------------------------------------------

/// 17 significant digits, enough for a lossless round trip.
std::string format_number(double v);

void export_summaries_csv(std::span<const ExperimentSummary> summaries,
                          const std::filesystem::path& path);
/// One row per (run, iteration): algorithm, problem, seed, iteration, best_fitness.
void export_run_records_csv(std::span<const ExperimentSummary> summaries,
                            const std::filesystem::path& path);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t column(std::string_view name) const;
};

CsvTable parse_csv(std::string_view text);
CsvTable read_csv(const std::filesystem::path& path);
void write_csv(const CsvTable& table, const std::filesystem::path& path);

/// Final best per run (value at the highest iteration) from a run-record CSV. A run is one
/// (algorithm, problem, seed) triple; results follow each run's first appearance.
Vector final_bests_from_run_records(const CsvTable& table);

// --- configuration and the full reproduction -------------------------------------------------

/// Flat `key = value` lines; '#' starts a comment. Duplicate keys: the last one wins.
std::map<std::string, std::string> parse_config(std::string_view text, const std::string& source);
std::map<std::string, std::string> load_config(const std::filesystem::path& path);

struct ReproduceConfig {
    std::size_t agents = 30;
    std::size_t iterations = 500;
    std::size_t suite_repetitions = 30;
    std::size_t vessel_repetitions = 15;
    std::uint64_t base_seed = 2021;
    std::optional<std::filesystem::path> data_dir;
    std::filesystem::path out_dir = "results";
    double penalty = problems::default_penalty;
    ClusterFitness cluster_fitness = ClusterFitness::min;
    problems::ConstraintSet constraints = problems::ConstraintSet::standard;
    std::size_t threads = 1;

    /// Applies keys agents, iters, reps, vessel-reps, seed, data-dir, out, penalty,
    /// cluster-fitness, paper-literal-constraints, threads. Unknown keys raise ConfigError.
    void apply(const std::map<std::string, std::string>& values);
};

struct ReproduceReport {
    std::vector<ExperimentSummary> suite_gwo;    // F1..F10
    std::vector<ExperimentSummary> suite_kmgwo;  // F1..F10
    ExperimentSummary vessel_gwo;
    ExperimentSummary vessel_kmgwo;
    Vector p_values;  // per function, KMGWO finals vs GWO finals
    double pooled_p = 1.0;  // signed-rank over per-function average differences
    std::filesystem::path table1, table3, table4;
};

/// Runs GWO and KMGWO on F1..F10 and on the pressure vessel, then writes
/// table1_cec2019.csv, table3_pvalues.csv and table4_vessel.csv into cfg.out_dir.
ReproduceReport reproduce_tables(const ReproduceConfig& cfg);
ReproduceReport reproduce_tables(const std::filesystem::path& config_path);

// --- typed option parsing shared with the CLI ------------------------------------------------

std::size_t parse_count(std::string_view key, std::string_view value);
std::uint64_t parse_u64(std::string_view key, std::string_view value);
double parse_real(std::string_view key, std::string_view value);
bool parse_bool(std::string_view key, std::string_view value);
ClusterFitness parse_cluster_fitness(std::string_view value);

}  // namespace kmgwo::harness
