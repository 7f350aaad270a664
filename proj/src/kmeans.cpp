#include "kmgwo/kmeans.hpp"

#include <numeric>

#include <fmt/core.h>

namespace kmgwo::kmeans {

namespace {

double squared_distance(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t d = 0; d < a.size(); ++d) {
        const double diff = a[d] - b[d];
        s += diff * diff;
    }
    return s;
}

void check_dims(std::span<const Vector> points, std::span<const Vector> centroids) {
    if (points.empty()) return;
    const std::size_t dim = points.front().size();
    for (std::size_t i = 0; i < points.size(); ++i)
        if (points[i].size() != dim)
            throw InputError(fmt::format("point {} has {} components, expected {}", i,
                                         points[i].size(), dim));
    for (std::size_t j = 0; j < centroids.size(); ++j)
        if (centroids[j].size() != dim)
            throw InputError(fmt::format("centroid {} has {} components, expected {}", j,
                                         centroids[j].size(), dim));
}

std::vector<std::size_t> cluster_sizes(std::span<const std::size_t> labels, std::size_t k) {
    std::vector<std::size_t> sizes(k, 0);
    for (auto l : labels) ++sizes[l];
    return sizes;
}

// Index of the point farthest from its assigned centroid among clusters with >= 2 members.
std::size_t farthest_spare_point(std::span<const Vector> points, std::span<const std::size_t> labels,
                                 std::span<const Vector> centroids,
                                 std::span<const std::size_t> sizes) {
    std::size_t best = points.size();
    double best_d = -1.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (sizes[labels[i]] < 2) continue;
        const double d = squared_distance(points[i], centroids[labels[i]]);
        if (d > best_d) {
            best_d = d;
            best = i;
        }
    }
    return best;
}

}  // namespace

double objective_j(std::span<const Vector> points, std::span<const Vector> centroids,
                   std::span<const std::size_t> assignments) {
    check_dims(points, centroids);
    if (assignments.size() != points.size())
        throw InputError(fmt::format("objective_j: {} labels for {} points", assignments.size(),
                                     points.size()));
    double j = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (assignments[i] >= centroids.size())
            throw InputError(fmt::format("objective_j: label {} of point {} is not below k={}",
                                         assignments[i], i, centroids.size()));
        j += squared_distance(points[i], centroids[assignments[i]]);
    }
    return j;
}

Labels assign(std::span<const Vector> points, std::span<const Vector> centroids) {
    if (centroids.empty()) throw InputError("assign: at least one centroid is required");
    check_dims(points, centroids);
    Labels labels(points.size(), 0);
    for (std::size_t i = 0; i < points.size(); ++i) {
        double best = squared_distance(points[i], centroids[0]);
        for (std::size_t j = 1; j < centroids.size(); ++j) {
            const double d = squared_distance(points[i], centroids[j]);
            if (d < best) {
                best = d;
                labels[i] = j;
            }
        }
    }
    return labels;
}

Points recompute_centroids(std::span<const Vector> points, std::span<const std::size_t> labels,
                           std::size_t k) {
    if (k == 0) throw InputError("recompute_centroids: k must be positive");
    if (labels.size() != points.size())
        throw InputError("recompute_centroids: label count differs from point count");
    check_dims(points, {});
    const std::size_t dim = points.empty() ? 0 : points.front().size();
    for (auto l : labels)
        if (l >= k) throw InputError(fmt::format("recompute_centroids: label {} >= k={}", l, k));

    Points centroids(k, Vector(dim, 0.0));
    auto sizes = cluster_sizes(labels, k);
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t d = 0; d < dim; ++d) centroids[labels[i]][d] += points[i][d];
    for (std::size_t j = 0; j < k; ++j)
        if (sizes[j] > 0)
            for (auto& c : centroids[j]) c /= static_cast<double>(sizes[j]);

    for (std::size_t j = 0; j < k; ++j) {
        if (sizes[j] > 0) continue;
        const std::size_t p = farthest_spare_point(points, labels, centroids, sizes);
        if (p < points.size()) centroids[j] = points[p];
    }
    return centroids;
}

void repair_empty_clusters(std::span<const Vector> points, Labels& labels, Points& centroids) {
    const std::size_t k = centroids.size();
    auto sizes = cluster_sizes(labels, k);
    for (std::size_t j = 0; j < k; ++j) {
        if (sizes[j] > 0) continue;
        const std::size_t p = farthest_spare_point(points, labels, centroids, sizes);
        if (p == points.size()) return;  // nothing to spare: fewer points than clusters
        --sizes[labels[p]];
        labels[p] = j;
        ++sizes[j];
        centroids[j] = points[p];
    }
}

Clustering lloyd(std::span<const Vector> points, std::size_t k, RandomStream& rng,
                 std::size_t max_iterations) {
    if (k == 0) throw ConfigError("lloyd: k must be positive");
    if (points.size() < k)
        throw ConfigError(fmt::format("lloyd: {} points cannot form {} clusters", points.size(), k));
    if (max_iterations == 0) throw ConfigError("lloyd: max_iterations must be positive");
    check_dims(points, {});

    // Forgy: partial Fisher-Yates over point indices.
    std::vector<std::size_t> order(points.size());
    std::iota(order.begin(), order.end(), 0);
    Points centroids;
    centroids.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        std::swap(order[i], order[i + rng.index(points.size() - i)]);
        centroids.push_back(points[order[i]]);
    }

    Clustering out;
    Labels labels = assign(points, centroids);
    repair_empty_clusters(points, labels, centroids);
    out.objective_history.push_back(objective_j(points, centroids, labels));
    std::size_t rounds = 1;

    for (;;) {
        centroids = recompute_centroids(points, labels, k);
        out.objective_history.push_back(objective_j(points, centroids, labels));
        if (rounds >= max_iterations) break;
        Labels next = assign(points, centroids);
        repair_empty_clusters(points, next, centroids);
        ++rounds;
        if (next == labels) break;
        labels = std::move(next);
        out.objective_history.push_back(objective_j(points, centroids, labels));
    }

    out.objective_j = objective_j(points, centroids, labels);
    out.centroids = std::move(centroids);
    out.assignments = std::move(labels);
    out.iterations_used = rounds;
    return out;
}

}  // namespace kmgwo::kmeans
