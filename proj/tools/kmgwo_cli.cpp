#include <cstdio>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>
#include <fmt/core.h>

#include "kmgwo/harness.hpp"

using namespace kmgwo;
using namespace kmgwo::harness;

namespace {

using Settings = std::map<std::string, std::string>;

struct Flags {
    Settings given;
    std::string config;
    std::vector<std::string> stats_inputs;
};

void add_common_options(CLI::App& sub, Flags& flags) {
    auto opt = [&](const char* name, const char* help) {
        sub.add_option_function<std::string>(
            fmt::format("--{}", name), [&flags, name](const std::string& v) { flags.given[name] = v; },
            help);
    };
    opt("agents", "population size");
    opt("iters", "iterations per run");
    opt("reps", "repetitions");
    opt("seed", "base seed (run: the run seed)");
    opt("data-dir", "directory with CEC2019 shift and rotation files");
    opt("out", "output path (directory for suite/vessel/reproduce)");
    opt("penalty", "static penalty coefficient for the vessel");
    opt("cluster-fitness", "min or mean");
    opt("threads", "worker threads for independent runs");
    sub.add_flag_callback(
        "--paper-literal-constraints", [&flags] { flags.given["paper-literal-constraints"] = "true"; },
        "vessel constraints g2 = -R + 0.00954R, g4 = L + 240");
    sub.add_option("--config", flags.config, "key=value file; flags override its values");
}

Settings merged(const Flags& flags) {
    Settings s;
    if (!flags.config.empty()) s = load_config(flags.config);
    for (const auto& [k, v] : flags.given) s[k] = v;
    return s;
}

struct Experiment {
    std::optional<Algorithm> algorithm;
    std::optional<std::string> problem;
    std::optional<std::size_t> reps;
    std::uint64_t seed = 2021;
    std::optional<std::filesystem::path> out;
    ProblemOptions problem_options;
    KmgwoParams params;
    std::size_t threads = 1;
};

Experiment interpret(const Settings& s) {
    Experiment e;
    for (const auto& [key, value] : s) {
        if (key == "algo") e.algorithm = parse_algorithm(value);
        else if (key == "problem") e.problem = value;
        else if (key == "agents") e.params.gwo.population_size = parse_count(key, value);
        else if (key == "iters") e.params.gwo.max_iterations = parse_count(key, value);
        else if (key == "reps") e.reps = parse_count(key, value);
        else if (key == "seed") e.seed = parse_u64(key, value);
        else if (key == "data-dir") e.problem_options.data_dir = value;
        else if (key == "out") e.out = value;
        else if (key == "penalty") e.problem_options.penalty = parse_real(key, value);
        else if (key == "cluster-fitness") e.params.cluster_fitness = parse_cluster_fitness(value);
        else if (key == "paper-literal-constraints")
            e.problem_options.constraints = parse_bool(key, value)
                                                ? problems::ConstraintSet::paper_literal
                                                : problems::ConstraintSet::standard;
        else if (key == "threads") e.threads = parse_count(key, value);
        else throw ConfigError(fmt::format("unknown configuration key '{}'", key));
    }
    e.params.validate();
    return e;
}

std::vector<Algorithm> algorithms_of(const Experiment& e) {
    if (e.algorithm) return {*e.algorithm};
    return {Algorithm::gwo, Algorithm::kmgwo};
}

ExperimentSummary run_one_experiment(const Experiment& e, Algorithm algo, const std::string& id,
                                     const Problem& problem, std::size_t reps) {
    ExperimentSpec spec;
    spec.algorithm = algo;
    spec.problem_id = id;
    spec.repetitions = reps;
    spec.base_seed = e.seed;
    spec.params = e.params;
    spec.threads = e.threads;
    std::fprintf(stderr, "%s on %s: %zu runs\n", std::string(to_string(algo)).c_str(), id.c_str(),
                 reps);
    return run_experiment(spec, problem);
}

void print_summary(const ExperimentSummary& s) {
    fmt::print("{:<6} {:<10} n={:<3} avg={:<14.8g} std={:<14.8g} best={:.8g}", to_string(s.algorithm),
               s.problem, s.repetitions(), s.avg, s.std_dev, s.best);
    if (const auto rate = s.gate_cluster_rate()) fmt::print("  gate={:.2f}", *rate);
    fmt::print("\n");
}

void write_outputs(const std::vector<ExperimentSummary>& all, const std::optional<std::filesystem::path>& out) {
    if (!out) return;
    export_summaries_csv(all, *out / "summary.csv");
    export_run_records_csv(all, *out / "runs.csv");
    fmt::print("wrote {} and {}\n", (*out / "summary.csv").string(), (*out / "runs.csv").string());
}

int cmd_run(const Flags& flags) {
    const Experiment e = interpret(merged(flags));
    if (!e.problem) throw ConfigError("run: --problem is required");
    const Algorithm algo = e.algorithm.value_or(Algorithm::kmgwo);
    const Problem problem = resolve_problem(*e.problem, e.problem_options);

    KmgwoParams params = e.params;
    params.gwo.seed = e.seed;
    ExperimentSummary s;
    s.algorithm = algo;
    s.problem = *e.problem;
    s.seeds = {e.seed};
    if (algo == Algorithm::gwo) {
        s.runs.push_back(gwo_run(problem, params.gwo));
    } else {
        auto [record, gate] = kmgwo_run(problem, params);
        s.runs.push_back(std::move(record));
        s.gates.push_back(gate);
    }
    const auto& best = s.runs.front().final_best;
    fmt::print("{} {} seed={} best={}\n", to_string(algo), *e.problem, e.seed,
               format_number(best.fitness()));
    fmt::print("x =");
    for (double v : best.position()) fmt::print(" {}", format_number(v));
    fmt::print("\n");
    if (!s.gates.empty()) {
        const auto& g = s.gates.front();
        fmt::print("gate draw={:.6f} f1={:.8g} f2={:.8g} sizes={}/{} decision={}\n", g.gate_draw,
                   g.fitness_c1, g.fitness_c2, g.size_c1, g.size_c2, to_string(g.decision));
    }
    if (e.out) {
        export_run_records_csv(std::span(&s, 1), *e.out);
        fmt::print("wrote {}\n", e.out->string());
    }
    return 0;
}

int cmd_suite(const Flags& flags) {
    const Experiment e = interpret(merged(flags));
    const std::size_t reps = e.reps.value_or(30);
    const auto data = problems::load_cec2019_data(resolve_data_dir(e.problem_options.data_dir));
    std::vector<ExperimentSummary> all;
    for (int f = 1; f <= 10; ++f) {
        const auto id = fmt::format("cec19:f{}", f);
        if (e.problem && *e.problem != id && *e.problem != fmt::format("f{}", f)) continue;
        const Problem problem = problems::make_cec2019_problem(f, &data);
        for (Algorithm a : algorithms_of(e)) {
            all.push_back(run_one_experiment(e, a, id, problem, reps));
            print_summary(all.back());
        }
    }
    if (all.empty()) throw ConfigError(fmt::format("suite: '{}' is not a CEC2019 function", *e.problem));
    write_outputs(all, e.out);
    return 0;
}

int cmd_vessel(const Flags& flags) {
    const Experiment e = interpret(merged(flags));
    const std::size_t reps = e.reps.value_or(15);
    const Problem problem = resolve_problem("vessel", e.problem_options);
    std::vector<ExperimentSummary> all;
    for (Algorithm a : algorithms_of(e)) {
        all.push_back(run_one_experiment(e, a, "vessel", problem, reps));
        const auto& s = all.back();
        print_summary(s);
        std::size_t best = 0;
        for (std::size_t r = 1; r < s.finals.size(); ++r)
            if (s.finals[r] < s.finals[best]) best = r;
        const auto& x = s.runs[best].final_best.position();
        const auto report = problems::pv_constraints(x, e.problem_options.constraints);
        fmt::print("       best design Ts={:.6g} Th={:.6g} R={:.6g} L={:.6g} feasible={}\n", x[0],
                   x[1], x[2], x[3], report.feasible);
    }
    write_outputs(all, e.out);
    return 0;
}

int cmd_stats(const Flags& flags) {
    if (!flags.given.empty() || !flags.config.empty())
        throw ConfigError("stats takes two run-record CSV paths and no options");
    const Vector a = final_bests_from_run_records(read_csv(flags.stats_inputs.at(0)));
    const Vector b = final_bests_from_run_records(read_csv(flags.stats_inputs.at(1)));
    if (a.empty() || b.empty()) throw DataError("stats: a run-record CSV holds no runs");
    const double p = wilcoxon_rank_sum(a, b);
    fmt::print("n_a={} avg_a={:.10g}\nn_b={} avg_b={:.10g}\np={}\n", a.size(), mean(a), b.size(),
               mean(b), format_number(p));
    return 0;
}

int cmd_reproduce(const Flags& flags) {
    ReproduceConfig cfg;
    cfg.apply(merged(flags));
    const auto report = reproduce_tables(cfg);
    for (std::size_t i = 0; i < report.suite_gwo.size(); ++i) {
        print_summary(report.suite_gwo[i]);
        print_summary(report.suite_kmgwo[i]);
        fmt::print("       rank-sum p={:.6g}\n", report.p_values[i]);
    }
    print_summary(report.vessel_gwo);
    print_summary(report.vessel_kmgwo);
    fmt::print("pooled signed-rank p over average differences: {:.6g}\n", report.pooled_p);
    fmt::print("wrote {}, {}, {}\n", report.table1.string(), report.table3.string(),
               report.table4.string());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"GWO and KMGWO experiment runner"};
    app.require_subcommand(1);

    Flags flags;
    auto* run = app.add_subcommand("run", "one run of one algorithm on one problem");
    auto* suite = app.add_subcommand("suite", "CEC2019 F1-F10 experiments");
    auto* vessel = app.add_subcommand("vessel", "pressure vessel experiments");
    auto* stats = app.add_subcommand("stats", "rank-sum test between two run-record CSVs");
    auto* reproduce = app.add_subcommand("reproduce", "all tables into --out");

    for (auto* sub : {run, suite, vessel, reproduce}) add_common_options(*sub, flags);
    for (auto* sub : {run, suite, vessel}) {
        sub->add_option_function<std::string>(
            "--algo", [&flags](const std::string& v) { flags.given["algo"] = v; }, "gwo or kmgwo");
        sub->add_option_function<std::string>(
            "--problem", [&flags](const std::string& v) { flags.given["problem"] = v; },
            "vessel, sphere or cec19:fN");
    }
    stats->add_option("files", flags.stats_inputs, "two run-record CSV files")
        ->required()
        ->expected(2);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*run) return cmd_run(flags);
        if (*suite) return cmd_suite(flags);
        if (*vessel) return cmd_vessel(flags);
        if (*stats) return cmd_stats(flags);
        return cmd_reproduce(flags);
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return 2;
    } catch (const InputError& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return 2;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    }
}
