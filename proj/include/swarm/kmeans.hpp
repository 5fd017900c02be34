#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "swarm/rng.hpp"

namespace swarm {

struct KMeansResult {
    std::vector<int> assignment;
    std::vector<std::vector<double>> centroids;
    double objective = 0.0;  // sum of squared distances to assigned centroid
    int iterations = 0;
};

namespace detail {

inline double sq_dist(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

}  // namespace detail

// Lloyd's algorithm with k-means++ seeding; deterministic given the seed.
// Converges on centroid shift < 1e-9 or 100 iterations. When there are fewer
// distinct points than k, the distinct points become singleton centroids.
inline KMeansResult kmeans(const std::vector<std::vector<double>>& points, int k,
                           std::uint64_t seed, int max_iters = 100) {
    KMeansResult out;
    const int n = static_cast<int>(points.size());
    if (n == 0 || k < 1) return out;
    k = std::min(k, n);
    Rng rng(seed);

    // Distinct points, first-occurrence order.
    std::vector<int> distinct;
    for (int i = 0; i < n; ++i) {
        bool dup = false;
        for (int j : distinct)
            if (points[i] == points[j]) { dup = true; break; }
        if (!dup) distinct.push_back(i);
    }

    if (static_cast<int>(distinct.size()) <= k) {
        for (int j : distinct) out.centroids.push_back(points[j]);
    } else {
        // k-means++: first centroid uniform, then D^2 sampling.
        out.centroids.push_back(points[rng.uniform_index(n)]);
        std::vector<double> d2(n);
        while (static_cast<int>(out.centroids.size()) < k) {
            double total = 0.0;
            for (int i = 0; i < n; ++i) {
                double best = std::numeric_limits<double>::infinity();
                for (const auto& c : out.centroids)
                    best = std::min(best, detail::sq_dist(points[i], c));
                d2[i] = best;
                total += best;
            }
            if (total <= 0.0) break;
            double r = rng.uniform() * total;
            int chosen = n - 1;
            for (int i = 0; i < n; ++i) {
                r -= d2[i];
                if (r <= 0.0) { chosen = i; break; }
            }
            out.centroids.push_back(points[chosen]);
        }
    }
    const int k_eff = static_cast<int>(out.centroids.size());

    out.assignment.assign(n, 0);
    for (int iter = 0; iter < max_iters; ++iter) {
        ++out.iterations;
        for (int i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::infinity();
            int arg = 0;
            for (int c = 0; c < k_eff; ++c) {
                const double d = detail::sq_dist(points[i], out.centroids[c]);
                if (d < best) { best = d; arg = c; }
            }
            out.assignment[i] = arg;
        }
        std::vector<std::vector<double>> sums(k_eff,
                                              std::vector<double>(points[0].size(), 0.0));
        std::vector<int> counts(k_eff, 0);
        for (int i = 0; i < n; ++i) {
            ++counts[out.assignment[i]];
            for (std::size_t d = 0; d < points[i].size(); ++d)
                sums[out.assignment[i]][d] += points[i][d];
        }
        double shift = 0.0;
        for (int c = 0; c < k_eff; ++c) {
            if (counts[c] == 0) continue;  // empty cluster keeps its centroid
            for (std::size_t d = 0; d < sums[c].size(); ++d) {
                sums[c][d] /= counts[c];
                shift = std::max(shift, std::abs(sums[c][d] - out.centroids[c][d]));
            }
            out.centroids[c] = sums[c];
        }
        if (shift < 1e-9) break;
    }

    out.objective = 0.0;
    for (int i = 0; i < n; ++i)
        out.objective += detail::sq_dist(points[i], out.centroids[out.assignment[i]]);
    return out;
}

}  // namespace swarm
