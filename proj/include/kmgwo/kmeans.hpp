#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "kmgwo/core.hpp"

namespace kmgwo::kmeans {

using Points = std::vector<Vector>;
using Labels = std::vector<std::size_t>;

struct Clustering {
    Points centroids;
    Labels assignments;
    double objective_j = 0.0;
    std::size_t iterations_used = 0;
    /// J after the initial assignment and after every recompute/assign round.
    Vector objective_history;
};

/// Within-cluster sum of squared Euclidean distances.
double objective_j(std::span<const Vector> points, std::span<const Vector> centroids,
                   std::span<const std::size_t> assignments);

/// Nearest centroid per point; ties go to the lowest centroid index.
Labels assign(std::span<const Vector> points, std::span<const Vector> centroids);

/// Per-cluster means. A cluster with no members gets the point farthest from its own cluster's
/// mean (taken from clusters with at least two members).
Points recompute_centroids(std::span<const Vector> points, std::span<const std::size_t> labels,
                           std::size_t k);

/// Gives every empty cluster a member: the point farthest from its current centroid, taken
/// from a cluster that can spare it, becomes that cluster's sole member and centroid.
void repair_empty_clusters(std::span<const Vector> points, Labels& labels, Points& centroids);

/// Lloyd iteration from a Forgy start (k distinct points, without replacement, k draws).
/// Stops when the labels repeat or after max_iterations rounds.
Clustering lloyd(std::span<const Vector> points, std::size_t k, RandomStream& rng,
                 std::size_t max_iterations = 100);

/// Number of stream draws lloyd consumes for a given k.
constexpr std::size_t forgy_draws(std::size_t k) noexcept { return k; }

}  // namespace kmgwo::kmeans
