#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "swarm/segment.hpp"
#include "swarm/vec2.hpp"

namespace swarm {

// Per-tick spatial situation of one sheep relative to the swarm and shepherd.
struct SpatialContext {
    double d_pi_beta = 0.0;   // sheep to shepherd
    double d_pi_gcm = 0.0;    // sheep to flock centre of mass
    double d_gcm_beta = 0.0;  // flock centre of mass to shepherd
    int theta = 0;            // line-of-sight obstruction count
    int bin_order = 1;        // shepherd-distance rank bin, 1 = closest
    int n_bins = 1;
    int omega_pipi = 0;       // crowding: other sheep within the crowding radius
};

// Number of other sheep lying within perpendicular distance corridor_halfwidth
// of the open segment from sheep i to the shepherd.
inline int line_of_sight_obstructions(const std::vector<Vec2>& positions, int i, int beta,
                                      double corridor_halfwidth) {
    const Vec2 a = positions[i];
    const Vec2 b = positions[beta];
    const Vec2 ab = b - a;
    const double len2 = ab.norm2();
    int count = 0;
    for (int j = 0; j < static_cast<int>(positions.size()); ++j) {
        if (j == i || j == beta) continue;
        if (len2 <= 0.0) continue;
        const double t = (positions[j] - a).dot(ab) / len2;
        if (t <= 0.0 || t >= 1.0) continue;  // open segment
        const Vec2 foot = a + t * ab;
        if (distance(positions[j], foot) <= corridor_halfwidth) ++count;
    }
    return count;
}

// Obstruction-weighted proximity from the sheep's perspective, in (0, 1].
// Falls back to the limit convention when a denominator distance is zero.
inline double situation_awareness(const SpatialContext& ctx) {
    if (ctx.d_pi_gcm <= 0.0 || ctx.d_gcm_beta <= 0.0) return ctx.theta == 0 ? 1.0 : 0.0;
    const double obstruction =
        (ctx.d_pi_beta * ctx.d_pi_beta) / (ctx.d_pi_gcm * ctx.d_gcm_beta) * ctx.theta;
    return 1.0 / (obstruction + 1.0);
}

// Bin-rank- and crowding-scaled proximity risk; highest for the sheep closest
// to the shepherd with no neighbours.
inline double predation_risk(const SpatialContext& ctx, int n_sheep) {
    return (1.0 / ctx.bin_order) * (static_cast<double>(n_sheep) / (ctx.omega_pipi + 1));
}

inline int predation_bins(int n_sheep) {
    return static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n_sheep))));
}

// Builds contexts for every sheep at one tick. Bin order ranks sheep by
// shepherd distance (ties by agent index) into B = ceil(sqrt(N)) uniform bins.
inline std::vector<SpatialContext> spatial_contexts_at_tick(const std::vector<Vec2>& positions,
                                                            int n_sheep, double r_agent_repulse,
                                                            double crowding_radius) {
    const int beta = n_sheep;
    Vec2 gcm;
    for (int i = 0; i < n_sheep; ++i) gcm += positions[i];
    gcm *= 1.0 / static_cast<double>(n_sheep);

    std::vector<int> order(n_sheep);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> d_beta(n_sheep);
    for (int i = 0; i < n_sheep; ++i) d_beta[i] = distance(positions[i], positions[beta]);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return d_beta[a] < d_beta[b]; });

    const int bins = predation_bins(n_sheep);
    std::vector<SpatialContext> out(n_sheep);
    for (int rank = 0; rank < n_sheep; ++rank) {
        const int i = order[rank];
        SpatialContext& ctx = out[i];
        ctx.d_pi_beta = d_beta[i];
        ctx.d_pi_gcm = distance(positions[i], gcm);
        ctx.d_gcm_beta = distance(gcm, positions[beta]);
        ctx.theta = line_of_sight_obstructions(positions, i, beta, r_agent_repulse / 2.0);
        ctx.n_bins = bins;
        ctx.bin_order = 1 + rank * bins / n_sheep;
        ctx.omega_pipi = 0;
        for (int j = 0; j < n_sheep; ++j)
            if (j != i && distance(positions[j], positions[i]) <= crowding_radius) ++ctx.omega_pipi;
    }
    return out;
}

}  // namespace swarm
