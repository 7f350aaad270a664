#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

#include "kmgwo/harness.hpp"

namespace kmgwo::harness {

namespace {

struct Ranking {
    std::vector<std::size_t> doubled;  // 2 * midrank, always an integer
    double tie_term = 0.0;             // sum over tie groups of t^3 - t
};

Ranking doubled_midranks(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return values[i] < values[j]; });
    Ranking r;
    r.doubled.assign(n, 0);
    for (std::size_t start = 0; start < n;) {
        std::size_t end = start;
        while (end + 1 < n && values[order[end + 1]] == values[order[start]]) ++end;
        // ranks start+1 .. end+1 share their average
        for (std::size_t i = start; i <= end; ++i) r.doubled[order[i]] = start + end + 2;
        const double t = static_cast<double>(end - start + 1);
        r.tie_term += t * t * t - t;
        start = end + 1;
    }
    return r;
}

double two_sided(std::uint64_t lower, std::uint64_t upper, std::uint64_t total) {
    const double p = 2.0 * static_cast<double>(std::min(lower, upper)) / static_cast<double>(total);
    return std::min(1.0, p);
}

double normal_two_sided(double deviation, double variance) {
    if (!(variance > 0.0)) return 1.0;
    const double z = std::max(0.0, std::abs(deviation) - 0.5) / std::sqrt(variance);
    return std::min(1.0, std::erfc(z / std::sqrt(2.0)));
}

}  // namespace

double wilcoxon_rank_sum(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw InputError("wilcoxon_rank_sum: both samples must be nonempty");
    const std::size_t na = a.size(), nb = b.size(), n = na + nb;

    Vector pooled(a.begin(), a.end());
    pooled.insert(pooled.end(), b.begin(), b.end());
    const Ranking ranks = doubled_midranks(pooled);
    std::size_t w2 = 0;
    for (std::size_t i = 0; i < na; ++i) w2 += ranks.doubled[i];

    if (n <= 12) {
        // ways[j][s]: subsets of size j whose doubled rank sum is s.
        const std::size_t max_sum = std::accumulate(ranks.doubled.begin(), ranks.doubled.end(),
                                                    std::size_t{0});
        std::vector<std::vector<std::uint64_t>> ways(na + 1,
                                                     std::vector<std::uint64_t>(max_sum + 1, 0));
        ways[0][0] = 1;
        for (std::size_t item = 0; item < n; ++item) {
            const std::size_t r = ranks.doubled[item];
            for (std::size_t j = std::min(na, item + 1); j >= 1; --j)
                for (std::size_t s = max_sum; s >= r; --s) {
                    ways[j][s] += ways[j - 1][s - r];
                    if (s == r) break;
                }
        }
        std::uint64_t lower = 0, upper = 0, total = 0;
        for (std::size_t s = 0; s <= max_sum; ++s) {
            total += ways[na][s];
            if (s <= w2) lower += ways[na][s];
            if (s >= w2) upper += ways[na][s];
        }
        return two_sided(lower, upper, total);
    }

    const double w = static_cast<double>(w2) / 2.0;
    const double dn = static_cast<double>(n);
    const double expected = static_cast<double>(na) * (dn + 1.0) / 2.0;
    const double variance = static_cast<double>(na) * static_cast<double>(nb) / 12.0 *
                            ((dn + 1.0) - ranks.tie_term / (dn * (dn - 1.0)));
    return normal_two_sided(w - expected, variance);
}

double wilcoxon_signed_rank(std::span<const double> differences) {
    Vector magnitudes;
    std::vector<bool> positive;
    for (double d : differences) {
        if (d == 0.0) continue;
        magnitudes.push_back(std::abs(d));
        positive.push_back(d > 0.0);
    }
    const std::size_t n = magnitudes.size();
    if (n == 0) return 1.0;

    const Ranking ranks = doubled_midranks(magnitudes);
    std::size_t w2 = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (positive[i]) w2 += ranks.doubled[i];

    if (n <= 20) {
        const std::size_t max_sum = std::accumulate(ranks.doubled.begin(), ranks.doubled.end(),
                                                    std::size_t{0});
        std::vector<std::uint64_t> ways(max_sum + 1, 0);
        ways[0] = 1;
        for (std::size_t r : ranks.doubled)
            for (std::size_t s = max_sum; s >= r; --s) {
                ways[s] += ways[s - r];
                if (s == r) break;
            }
        std::uint64_t lower = 0, upper = 0, total = 0;
        for (std::size_t s = 0; s <= max_sum; ++s) {
            total += ways[s];
            if (s <= w2) lower += ways[s];
            if (s >= w2) upper += ways[s];
        }
        return two_sided(lower, upper, total);
    }

    const double dn = static_cast<double>(n);
    const double expected = dn * (dn + 1.0) / 4.0;
    const double variance = dn * (dn + 1.0) * (2.0 * dn + 1.0) / 24.0 - ranks.tie_term / 48.0;
    return normal_two_sided(static_cast<double>(w2) / 2.0 - expected, variance);
}

}  // namespace kmgwo::harness
