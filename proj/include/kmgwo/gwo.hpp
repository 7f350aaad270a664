#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <span>
#include <vector>

#include "kmgwo/core.hpp"

namespace kmgwo {

struct GwoParams {
    std::size_t population_size = 30;
    std::size_t max_iterations = 500;
    std::uint64_t seed = 0;
    double a_initial = 2.0;

    void validate() const;
};

struct RunRecord {
    Vector best_per_iteration;  // alpha fitness after each sweep
    SearchAgent final_best;
    std::size_t evaluations = 0;
    std::chrono::nanoseconds wall_time{0};

    /// Equality of everything that the seed determines; wall_time is ignored.
    bool same_trajectory(const RunRecord& other) const;
};

/// Linear control schedule: 2 at iteration 0, 0 at iteration == max_iterations.
double update_a(std::size_t iteration, std::size_t max_iterations, double a_initial = 2.0);

struct Coefficients {
    double A;
    double C;
};

/// One (A, C) pair from two uniform01 draws, r1 then r2:
///   A = 2*a*r1 - a,  C = 2*r2.
/// With "- a", A lies in [-a, a) and its range shrinks with a. A "+ a" form would give [a, 3a).
Coefficients sample_coefficients(double a, RandomStream& rng);
Coefficients coefficients_from(double a, double r1, double r2) noexcept;

/// Leader-guided move for one agent with explicit coefficients.
///
/// `coeffs` holds three pairs per dimension in the order (alpha, beta, delta) for dimension 0,
/// then dimension 1, and so on. Per dimension and leader L:
///   D_L = |C_L * X_L - x|,  X'_L = X_L - A_L * D_L,
/// and the result is the mean of the three X'_L.
Vector leader_guided_position(std::span<const double> x, const Leaders& leaders,
                              std::span<const Coefficients> coeffs);

/// Same move, drawing the coefficients from `rng` (exactly 6 draws per dimension).
Vector leader_guided_position(std::span<const double> x, const Leaders& leaders, double a,
                              RandomStream& rng);

/// Elitist leader update. Agents are scanned in order; an agent strictly better than a leader
/// takes its seat and pushes the worse leaders down one rank. Ties keep the incumbent.
Leaders update_leaders(std::span<const SearchAgent> population, Leaders leaders);

RunRecord gwo_run(const Problem& problem, const GwoParams& params);

/// The main sweep loop on an already evaluated population. `evaluations` and `started` carry
/// the bookkeeping of whatever preceded the loop (initial evaluation, clustering, ...).
RunRecord gwo_iterate(const Problem& problem, std::size_t max_iterations, double a_initial,
                      std::vector<SearchAgent> population, RandomStream& rng,
                      std::size_t evaluations, std::chrono::steady_clock::time_point started);

}  // namespace kmgwo
