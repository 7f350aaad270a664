#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace kmgwo {

// Error taxonomy. The CLI maps these onto exit codes 2, 3 and 4.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Malformed or inconsistent inputs to a pure operation (dimension mismatch, bad label, ...).
struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RuntimeFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Vector = std::vector<double>;

/// Axis-aligned box. Every dimension satisfies lower[d] < upper[d].
class Bounds {
public:
    Bounds(Vector lower, Vector upper);

    /// Same interval on every axis.
    static Bounds uniform(std::size_t dimension, double lower, double upper);

    std::size_t size() const noexcept { return lower_.size(); }
    const Vector& lower() const noexcept { return lower_; }
    const Vector& upper() const noexcept { return upper_; }
    bool contains(std::span<const double> x) const;

private:
    Vector lower_;
    Vector upper_;
};

/// A candidate solution. The fitness is cached and dropped whenever the position changes.
class SearchAgent {
public:
    SearchAgent() = default;
    explicit SearchAgent(Vector position) : position_(std::move(position)) {}
    SearchAgent(Vector position, double fitness)
        : position_(std::move(position)), fitness_(fitness), valid_(true) {}

    const Vector& position() const noexcept { return position_; }
    void set_position(Vector position) {
        position_ = std::move(position);
        valid_ = false;
    }

    bool has_fitness() const noexcept { return valid_; }
    double fitness() const;
    void set_fitness(double f) noexcept {
        fitness_ = f;
        valid_ = true;
    }

    friend bool operator==(const SearchAgent&, const SearchAgent&) = default;

private:
    Vector position_;
    double fitness_ = std::numeric_limits<double>::infinity();
    bool valid_ = false;
};

/// The three best agents seen so far, ordered alpha <= beta <= delta by fitness.
struct Leaders {
    SearchAgent alpha;
    SearchAgent beta;
    SearchAgent delta;

    /// Leaders at +inf fitness, displaced by any finite agent.
    static Leaders sentinel(std::size_t dimension);

    friend bool operator==(const Leaders&, const Leaders&) = default;
};

using Objective = std::function<double(std::span<const double>)>;

/// A minimization problem. The objective must be pure and re-entrant.
struct Problem {
    std::string name;
    Bounds bounds;
    Objective objective;

    std::size_t dimension() const noexcept { return bounds.size(); }
};

/// Seedable uniform stream.
///
/// Backed by std::mt19937_64 (its output sequence is fixed by the standard). A uniform01 draw
/// takes the top 53 bits of one 64-bit output, so it lies in [0, 1) and is identical on every
/// conforming platform. Every draw is counted so tests can audit consumption.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    double uniform01() {
        ++draws_;
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) {
        const double x = lo + (hi - lo) * uniform01();
        return x < hi ? x : std::nextafter(hi, lo);  // rounding can land on hi
    }

    /// Uniform integer in [0, n) from a single uniform01 draw.
    std::size_t index(std::size_t n);

    void discard(std::uint64_t n) {
        for (std::uint64_t i = 0; i < n; ++i) uniform01();
    }

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t draws() const noexcept { return draws_; }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
    std::uint64_t draws_ = 0;
};

/// splitmix64 finalizer; a bijection on 64-bit words.
std::uint64_t mix64(std::uint64_t x) noexcept;

Vector clamp(std::span<const double> position, const Bounds& bounds);

/// n agents drawn uniformly in the box, fitness stale. Consumes n * dimension draws, agent-major.
std::vector<SearchAgent> random_population(std::size_t n, const Problem& problem, RandomStream& rng);

/// Evaluates the objective for every stale agent; returns how many calls were made.
std::size_t evaluate_population(std::vector<SearchAgent>& population, const Problem& problem);

}  // namespace kmgwo
