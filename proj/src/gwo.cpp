#include "kmgwo/gwo.hpp"

#include <cmath>

#include <fmt/core.h>

namespace kmgwo {

void GwoParams::validate() const {
    if (population_size < 4)
        throw ConfigError(fmt::format("population_size must be >= 4, got {}", population_size));
    if (max_iterations < 1) throw ConfigError("max_iterations must be >= 1");
    if (!(a_initial >= 0.0)) throw ConfigError("a_initial must be nonnegative");
}

bool RunRecord::same_trajectory(const RunRecord& other) const {
    return best_per_iteration == other.best_per_iteration && final_best == other.final_best &&
           evaluations == other.evaluations;
}

double update_a(std::size_t iteration, std::size_t max_iterations, double a_initial) {
    if (max_iterations == 0) throw InputError("update_a: max_iterations must be positive");
    if (iteration > max_iterations)
        throw InputError(fmt::format("update_a: iteration {} exceeds max_iterations {}", iteration,
                                     max_iterations));
    // a * (M - i) / M: one rounding, so every value is the correctly rounded exact schedule.
    return a_initial * static_cast<double>(max_iterations - iteration) /
           static_cast<double>(max_iterations);
}

Coefficients coefficients_from(double a, double r1, double r2) noexcept {
    return {2.0 * a * r1 - a, 2.0 * r2};
}

Coefficients sample_coefficients(double a, RandomStream& rng) {
    const double r1 = rng.uniform01();
    const double r2 = rng.uniform01();
    return coefficients_from(a, r1, r2);
}

namespace {

void check_leader_dims(std::size_t n, const Leaders& leaders) {
    if (leaders.alpha.position().size() != n || leaders.beta.position().size() != n ||
        leaders.delta.position().size() != n)
        throw InputError(fmt::format("leader_guided_position: agent has {} components, leaders "
                                     "have {}/{}/{}",
                                     n, leaders.alpha.position().size(),
                                     leaders.beta.position().size(),
                                     leaders.delta.position().size()));
}

inline double pulled(double leader, double x, Coefficients c) {
    const double distance = std::abs(c.C * leader - x);
    return leader - c.A * distance;
}

}  // namespace

Vector leader_guided_position(std::span<const double> x, const Leaders& leaders,
                              std::span<const Coefficients> coeffs) {
    check_leader_dims(x.size(), leaders);
    if (coeffs.size() != 3 * x.size())
        throw InputError(fmt::format("leader_guided_position: need {} coefficient pairs, got {}",
                                     3 * x.size(), coeffs.size()));
    const auto& xa = leaders.alpha.position();
    const auto& xb = leaders.beta.position();
    const auto& xd = leaders.delta.position();
    Vector out(x.size());
    for (std::size_t d = 0; d < x.size(); ++d) {
        const double x1 = pulled(xa[d], x[d], coeffs[3 * d]);
        const double x2 = pulled(xb[d], x[d], coeffs[3 * d + 1]);
        const double x3 = pulled(xd[d], x[d], coeffs[3 * d + 2]);
        out[d] = (x1 + x2 + x3) / 3.0;
    }
    return out;
}

Vector leader_guided_position(std::span<const double> x, const Leaders& leaders, double a,
                              RandomStream& rng) {
    check_leader_dims(x.size(), leaders);
    std::vector<Coefficients> coeffs(3 * x.size());
    for (auto& c : coeffs) c = sample_coefficients(a, rng);
    return leader_guided_position(x, leaders, coeffs);
}

Leaders update_leaders(std::span<const SearchAgent> population, Leaders leaders) {
    for (const auto& agent : population) {
        const double f = agent.fitness();
        if (f < leaders.alpha.fitness()) {
            leaders.delta = std::move(leaders.beta);
            leaders.beta = std::move(leaders.alpha);
            leaders.alpha = agent;
        } else if (f < leaders.beta.fitness()) {
            leaders.delta = std::move(leaders.beta);
            leaders.beta = agent;
        } else if (f < leaders.delta.fitness()) {
            leaders.delta = agent;
        }
    }
    return leaders;
}

RunRecord gwo_iterate(const Problem& problem, std::size_t max_iterations, double a_initial,
                      std::vector<SearchAgent> population, RandomStream& rng,
                      std::size_t evaluations, std::chrono::steady_clock::time_point started) {
    Leaders leaders = update_leaders(population, Leaders::sentinel(problem.dimension()));

    RunRecord record;
    record.best_per_iteration.reserve(max_iterations);
    for (std::size_t it = 0; it < max_iterations; ++it) {
        const double a = update_a(it, max_iterations, a_initial);
        for (auto& agent : population) {
            Vector moved = leader_guided_position(agent.position(), leaders, a, rng);
            agent.set_position(clamp(moved, problem.bounds));
        }
        try {
            evaluations += evaluate_population(population, problem);
        } catch (const RuntimeFailure& e) {
            throw RuntimeFailure(fmt::format("iteration {}: {}", it, e.what()));
        }
        leaders = update_leaders(population, std::move(leaders));
        record.best_per_iteration.push_back(leaders.alpha.fitness());
    }

    record.final_best = std::move(leaders.alpha);
    record.evaluations = evaluations;
    record.wall_time = std::chrono::steady_clock::now() - started;
    return record;
}

RunRecord gwo_run(const Problem& problem, const GwoParams& params) {
    params.validate();
    const auto started = std::chrono::steady_clock::now();
    RandomStream rng(params.seed);
    auto population = random_population(params.population_size, problem, rng);
    std::size_t evaluations;
    try {
        evaluations = evaluate_population(population, problem);
    } catch (const RuntimeFailure& e) {
        throw RuntimeFailure(fmt::format("initialization: {}", e.what()));
    }
    return gwo_iterate(problem, params.max_iterations, params.a_initial, std::move(population),
                       rng, evaluations, started);
}

}  // namespace kmgwo
