#include "kmgwo/kmgwo.hpp"

#include <algorithm>

#include <fmt/core.h>

namespace kmgwo {

std::string_view to_string(GateDecision d) noexcept {
    switch (d) {
        case GateDecision::took_cluster_1: return "took_cluster_1";
        case GateDecision::took_cluster_2: return "took_cluster_2";
        case GateDecision::kept_full_population: return "kept_full_population";
        case GateDecision::guard_fallback: return "guard_fallback";
    }
    return "unknown";
}

std::string_view to_string(ClusterFitness m) noexcept {
    return m == ClusterFitness::min ? "min" : "mean";
}

void KmgwoParams::validate() const {
    gwo.validate();
    if (k != 2) throw ConfigError(fmt::format("k must be 2, got {}", k));
    if (!(gate_threshold >= 0.0 && gate_threshold <= 1.0))
        throw ConfigError(fmt::format("gate_threshold must lie in [0, 1], got {}", gate_threshold));
    if (min_selected_size < 4)
        throw ConfigError(fmt::format("min_selected_size must be >= 4, got {}", min_selected_size));
    if (kmeans_max_iterations < 1) throw ConfigError("kmeans_max_iterations must be positive");
}

double cluster_fitness(std::span<const SearchAgent> members, ClusterFitness mode) {
    if (members.empty()) throw InputError("cluster_fitness: empty cluster");
    if (mode == ClusterFitness::min) {
        double best = members.front().fitness();
        for (const auto& m : members) best = std::min(best, m.fitness());
        return best;
    }
    double sum = 0.0;
    for (const auto& m : members) sum += m.fitness();
    return sum / static_cast<double>(members.size());
}

GateDecision decide_gate(double gate_draw, double fitness_c1, double fitness_c2,
                         std::size_t size_c1, std::size_t size_c2, const KmgwoParams& params) {
    bool use_cluster = gate_draw > params.gate_threshold;
    if (params.gate_override)
        use_cluster = *params.gate_override == GateOverride::cluster_select;
    if (!use_cluster) return GateDecision::kept_full_population;

    const bool second = fitness_c2 < fitness_c1;
    const std::size_t winner_size = second ? size_c2 : size_c1;
    if (winner_size < params.min_selected_size) return GateDecision::guard_fallback;
    return second ? GateDecision::took_cluster_2 : GateDecision::took_cluster_1;
}

std::pair<std::vector<SearchAgent>, GateTrace> select_initial_population(
    std::span<const SearchAgent> population, const KmgwoParams& params, RandomStream& rng) {
    if (population.size() < 4)
        throw InputError(fmt::format("select_initial_population: need >= 4 agents, got {}",
                                     population.size()));

    std::vector<Vector> positions;
    positions.reserve(population.size());
    for (const auto& a : population) positions.push_back(a.position());
    const auto clustering = kmeans::lloyd(positions, params.k, rng, params.kmeans_max_iterations);

    std::vector<SearchAgent> c1, c2;
    for (std::size_t i = 0; i < population.size(); ++i)
        (clustering.assignments[i] == 0 ? c1 : c2).push_back(population[i]);

    GateTrace trace;
    trace.gate_draw = rng.uniform01();
    trace.size_c1 = c1.size();
    trace.size_c2 = c2.size();
    trace.fitness_c1 = cluster_fitness(c1, params.cluster_fitness);
    trace.fitness_c2 = cluster_fitness(c2, params.cluster_fitness);
    trace.decision = decide_gate(trace.gate_draw, trace.fitness_c1, trace.fitness_c2, c1.size(),
                                 c2.size(), params);

    std::vector<SearchAgent> selected;
    switch (trace.decision) {
        case GateDecision::took_cluster_1: selected = std::move(c1); break;
        case GateDecision::took_cluster_2: selected = std::move(c2); break;
        default: selected.assign(population.begin(), population.end()); break;
    }
    trace.selected_size = selected.size();
    return {std::move(selected), trace};
}

std::pair<RunRecord, GateTrace> kmgwo_run(const Problem& problem, const KmgwoParams& params) {
    params.validate();
    const auto started = std::chrono::steady_clock::now();
    RandomStream rng(params.gwo.seed);
    auto population = random_population(params.gwo.population_size, problem, rng);
    std::size_t evaluations;
    try {
        evaluations = evaluate_population(population, problem);
    } catch (const RuntimeFailure& e) {
        throw RuntimeFailure(fmt::format("initialization: {}", e.what()));
    }

    auto [selected, trace] = select_initial_population(population, params, rng);
    auto record = gwo_iterate(problem, params.gwo.max_iterations, params.gwo.a_initial,
                              std::move(selected), rng, evaluations, started);
    return {std::move(record), trace};
}

}  // namespace kmgwo
