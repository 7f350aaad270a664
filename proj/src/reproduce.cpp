#include <fstream>
#include <sstream>

#include <fmt/core.h>

#include "kmgwo/harness.hpp"

namespace kmgwo::harness {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

}  // namespace

std::map<std::string, std::string> parse_config(std::string_view text, const std::string& source) {
    std::map<std::string, std::string> values;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError(fmt::format("{}:{}: expected key=value", source, line_no));
        const auto key = trim(line.substr(0, eq));
        if (key.empty()) throw ConfigError(fmt::format("{}:{}: empty key", source, line_no));
        values[std::string(key)] = std::string(trim(line.substr(eq + 1)));
    }
    return values;
}

std::map<std::string, std::string> load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(fmt::format("cannot open config file '{}'", path.string()));
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path.string());
}

void ReproduceConfig::apply(const std::map<std::string, std::string>& values) {
    for (const auto& [key, value] : values) {
        if (key == "agents") agents = parse_count(key, value);
        else if (key == "iters") iterations = parse_count(key, value);
        else if (key == "reps") suite_repetitions = parse_count(key, value);
        else if (key == "vessel-reps") vessel_repetitions = parse_count(key, value);
        else if (key == "seed") base_seed = parse_u64(key, value);
        else if (key == "data-dir") data_dir = value;
        else if (key == "out") out_dir = value;
        else if (key == "penalty") penalty = parse_real(key, value);
        else if (key == "cluster-fitness") cluster_fitness = parse_cluster_fitness(value);
        else if (key == "paper-literal-constraints")
            constraints = parse_bool(key, value) ? problems::ConstraintSet::paper_literal
                                                 : problems::ConstraintSet::standard;
        else if (key == "threads") threads = parse_count(key, value);
        else throw ConfigError(fmt::format("unknown configuration key '{}'", key));
    }
}

ReproduceReport reproduce_tables(const ReproduceConfig& cfg) {
    ProblemOptions options{cfg.data_dir, cfg.penalty, cfg.constraints};

    KmgwoParams params;
    params.gwo.population_size = cfg.agents;
    params.gwo.max_iterations = cfg.iterations;
    params.cluster_fitness = cfg.cluster_fitness;
    params.validate();

    auto spec_for = [&](Algorithm algo, std::string id, std::size_t reps) {
        ExperimentSpec spec;
        spec.algorithm = algo;
        spec.problem_id = std::move(id);
        spec.repetitions = reps;
        spec.base_seed = cfg.base_seed;
        spec.params = params;
        spec.threads = cfg.threads;
        return spec;
    };

    // Load the data once; every function resolves from the same table.
    const auto data = problems::load_cec2019_data(resolve_data_dir(cfg.data_dir));

    ReproduceReport report;
    Vector avg_differences;
    for (int f = 1; f <= 10; ++f) {
        const auto id = fmt::format("cec19:f{}", f);
        const Problem problem = problems::make_cec2019_problem(f, &data);
        // Both algorithms share base_seed, so run r of each starts from the same population.
        report.suite_gwo.push_back(
            run_experiment(spec_for(Algorithm::gwo, id, cfg.suite_repetitions), problem));
        report.suite_kmgwo.push_back(
            run_experiment(spec_for(Algorithm::kmgwo, id, cfg.suite_repetitions), problem));
        const auto& g = report.suite_gwo.back();
        const auto& k = report.suite_kmgwo.back();
        report.p_values.push_back(wilcoxon_rank_sum(k.finals, g.finals));
        avg_differences.push_back(k.avg - g.avg);
    }
    report.pooled_p = wilcoxon_signed_rank(avg_differences);

    const Problem vessel = resolve_problem("vessel", options);
    report.vessel_gwo =
        run_experiment(spec_for(Algorithm::gwo, "vessel", cfg.vessel_repetitions), vessel);
    report.vessel_kmgwo =
        run_experiment(spec_for(Algorithm::kmgwo, "vessel", cfg.vessel_repetitions), vessel);

    // table1_cec2019.csv: averages and spreads per function.
    CsvTable t1;
    t1.header = {"function", "gwo_avg", "gwo_std", "kmgwo_avg", "kmgwo_std", "better"};
    for (std::size_t i = 0; i < 10; ++i) {
        const auto& g = report.suite_gwo[i];
        const auto& k = report.suite_kmgwo[i];
        const char* better = k.avg < g.avg ? "kmgwo" : (g.avg < k.avg ? "gwo" : "tie");
        t1.rows.push_back({fmt::format("F{}", i + 1), format_number(g.avg),
                           format_number(g.std_dev), format_number(k.avg),
                           format_number(k.std_dev), better});
    }

    // table3_pvalues.csv: rank-sum p-values per function.
    CsvTable t3;
    t3.header = {"function", "n_kmgwo", "n_gwo", "p_value"};
    for (std::size_t i = 0; i < 10; ++i)
        t3.rows.push_back({fmt::format("F{}", i + 1),
                           std::to_string(report.suite_kmgwo[i].repetitions()),
                           std::to_string(report.suite_gwo[i].repetitions()),
                           format_number(report.p_values[i])});

    // table4_vessel.csv: every vessel run with its design and feasibility.
    CsvTable t4;
    t4.header = {"algorithm", "run", "seed", "fitness", "ts", "th", "r", "l", "feasible"};
    for (const auto* s : {&report.vessel_gwo, &report.vessel_kmgwo}) {
        for (std::size_t r = 0; r < s->runs.size(); ++r) {
            const auto& x = s->runs[r].final_best.position();
            const bool feasible = problems::pv_constraints(x, cfg.constraints).feasible;
            t4.rows.push_back({std::string(to_string(s->algorithm)), std::to_string(r + 1),
                               std::to_string(s->seeds[r]), format_number(s->finals[r]),
                               format_number(x[0]), format_number(x[1]), format_number(x[2]),
                               format_number(x[3]), feasible ? "true" : "false"});
        }
    }

    report.table1 = cfg.out_dir / "table1_cec2019.csv";
    report.table3 = cfg.out_dir / "table3_pvalues.csv";
    report.table4 = cfg.out_dir / "table4_vessel.csv";
    write_csv(t1, report.table1);
    write_csv(t3, report.table3);
    write_csv(t4, report.table4);
    return report;
}

ReproduceReport reproduce_tables(const std::filesystem::path& config_path) {
    ReproduceConfig cfg;
    cfg.apply(load_config(config_path));
    return reproduce_tables(cfg);
}

}  // namespace kmgwo::harness
