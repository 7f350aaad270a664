#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "kmgwo/gwo.hpp"
#include "kmgwo/kmeans.hpp"

namespace kmgwo {

enum class ClusterFitness { min, mean };

enum class GateOverride { cluster_select, no_cluster };

enum class GateDecision { took_cluster_1, took_cluster_2, kept_full_population, guard_fallback };

std::string_view to_string(GateDecision d) noexcept;
std::string_view to_string(ClusterFitness m) noexcept;

struct KmgwoParams {
    GwoParams gwo;
    std::size_t k = 2;
    double gate_threshold = 0.5;
    std::size_t min_selected_size = 4;
    ClusterFitness cluster_fitness = ClusterFitness::min;
    std::size_t kmeans_max_iterations = 100;
    std::optional<GateOverride> gate_override;

    void validate() const;
};

struct GateTrace {
    double gate_draw = 0.0;
    double fitness_c1 = 0.0;
    double fitness_c2 = 0.0;
    GateDecision decision = GateDecision::kept_full_population;
    std::size_t selected_size = 0;
    std::size_t size_c1 = 0;
    std::size_t size_c2 = 0;

    bool took_cluster() const noexcept {
        return decision == GateDecision::took_cluster_1 || decision == GateDecision::took_cluster_2;
    }
    friend bool operator==(const GateTrace&, const GateTrace&) = default;
};

/// Fitness of a cluster: its best member (min) or the member average (mean).
double cluster_fitness(std::span<const SearchAgent> members,
                       ClusterFitness mode = ClusterFitness::min);

/// The gate rule, free of any randomness:
///  - gate_draw > threshold (or override cluster_select): the cluster with strictly smaller
///    fitness wins, ties go to cluster 1;
///  - otherwise (or override no_cluster): keep the full population;
///  - a winner smaller than min_selected_size falls back to the full population.
GateDecision decide_gate(double gate_draw, double fitness_c1, double fitness_c2,
                         std::size_t size_c1, std::size_t size_c2, const KmgwoParams& params);

/// Clusters the evaluated population with k-means (k = 2), draws one gate value and applies
/// decide_gate. Selected agents keep their original order and positions.
std::pair<std::vector<SearchAgent>, GateTrace> select_initial_population(
    std::span<const SearchAgent> population, const KmgwoParams& params, RandomStream& rng);

/// Stream draws spent between population initialization and the first sweep.
constexpr std::size_t pre_loop_draws(const KmgwoParams& params) noexcept {
    return kmeans::forgy_draws(params.k) + 1;
}

/// Initialize, evaluate, cluster and gate once, then run the GWO sweep loop on the selection.
/// Stream order: initialization, k-means start, one gate draw, sweep draws.
std::pair<RunRecord, GateTrace> kmgwo_run(const Problem& problem, const KmgwoParams& params);

}  // namespace kmgwo
