#include "kmgwo/core.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/core.h>

namespace kmgwo {

Bounds::Bounds(Vector lower, Vector upper) : lower_(std::move(lower)), upper_(std::move(upper)) {
    if (lower_.empty() || lower_.size() != upper_.size())
        throw InputError(fmt::format("bounds need equal nonzero lengths, got {} and {}",
                                     lower_.size(), upper_.size()));
    for (std::size_t d = 0; d < lower_.size(); ++d) {
        if (!(lower_[d] < upper_[d]))
            throw InputError(fmt::format("bounds[{}]: lower {} is not below upper {}", d,
                                         lower_[d], upper_[d]));
    }
}

Bounds Bounds::uniform(std::size_t dimension, double lower, double upper) {
    return Bounds(Vector(dimension, lower), Vector(dimension, upper));
}

bool Bounds::contains(std::span<const double> x) const {
    if (x.size() != size()) return false;
    for (std::size_t d = 0; d < x.size(); ++d)
        if (x[d] < lower_[d] || x[d] > upper_[d]) return false;
    return true;
}

double SearchAgent::fitness() const {
    if (!valid_) throw InputError("fitness requested for an agent with a stale position");
    return fitness_;
}

Leaders Leaders::sentinel(std::size_t dimension) {
    const double inf = std::numeric_limits<double>::infinity();
    SearchAgent s(Vector(dimension, 0.0), inf);
    return {s, s, s};
}

std::size_t RandomStream::index(std::size_t n) {
    auto i = static_cast<std::size_t>(uniform01() * static_cast<double>(n));
    return std::min(i, n - 1);
}

std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

Vector clamp(std::span<const double> position, const Bounds& bounds) {
    if (position.size() != bounds.size())
        throw InputError(fmt::format("clamp: position has {} components, bounds have {}",
                                     position.size(), bounds.size()));
    Vector out(position.size());
    for (std::size_t d = 0; d < position.size(); ++d)
        out[d] = std::min(bounds.upper()[d], std::max(bounds.lower()[d], position[d]));
    return out;
}

std::vector<SearchAgent> random_population(std::size_t n, const Problem& problem,
                                           RandomStream& rng) {
    if (n < 4)
        throw ConfigError(fmt::format(
            "population of {} is too small: three leaders plus one follower need at least 4", n));
    const auto& lo = problem.bounds.lower();
    const auto& hi = problem.bounds.upper();
    std::vector<SearchAgent> population;
    population.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Vector x(problem.dimension());
        for (std::size_t d = 0; d < x.size(); ++d) x[d] = rng.uniform(lo[d], hi[d]);
        population.emplace_back(std::move(x));
    }
    return population;
}

std::size_t evaluate_population(std::vector<SearchAgent>& population, const Problem& problem) {
    std::size_t calls = 0;
    for (std::size_t i = 0; i < population.size(); ++i) {
        auto& agent = population[i];
        if (agent.has_fitness()) continue;
        double f;
        try {
            f = problem.objective(agent.position());
        } catch (const std::exception& e) {
            throw RuntimeFailure(fmt::format("{}: agent {}: {}", problem.name, i, e.what()));
        }
        if (std::isnan(f))
            throw RuntimeFailure(fmt::format("{}: agent {}: objective returned NaN", problem.name, i));
        agent.set_fitness(f);
        ++calls;
    }
    return calls;
}

}  // namespace kmgwo
