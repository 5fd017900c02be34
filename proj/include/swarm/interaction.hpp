#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "swarm/kmeans.hpp"
#include "swarm/stats.hpp"
#include "swarm/windowing.hpp"

namespace swarm {

struct InsufficientDataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Per-agent normalized marker mass for one window: marker columns are divided
// by their L1 norm across agents (all-zero columns dropped), each agent then
// takes the L1 norm of its normalized row, and the result is normalized to
// sum 1 over the swarm.
struct AgentProfileL1 {
    std::vector<std::vector<double>> normalized_rows;  // [agent][kept marker]
    std::vector<double> shares;                        // per agent, sums to 1
};

inline AgentProfileL1 agent_l1_profile(const MarkerMatrix& matrix, int window) {
    const WindowMarkers& win = matrix.windows[window];
    const int n = matrix.n_sheep();
    const int m = matrix.n_markers();

    AgentProfileL1 out;
    out.normalized_rows.assign(n, {});
    for (int s = 0; s < m; ++s) {
        double l1 = 0.0;
        for (int i = 0; i < n; ++i)
            if (win.available[i][s]) l1 += std::abs(win.values[i][s]);
        if (l1 <= 0.0) continue;  // all-zero column dropped for this window
        for (int i = 0; i < n; ++i) {
            const double v = win.available[i][s] ? win.values[i][s] / l1 : 0.0;
            out.normalized_rows[i].push_back(v);
        }
    }

    out.shares.assign(n, 0.0);
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        double l1 = 0.0;
        for (double v : out.normalized_rows[i]) l1 += std::abs(v);
        out.shares[i] = l1;
        total += l1;
    }
    if (total > 0.0)
        for (double& s : out.shares) s /= total;
    else
        out.shares.assign(n, 1.0 / n);
    return out;
}

// Algorithm "agent association": per window, cluster the normalized marker
// profiles with k-means and connect co-clustered agents; sum the adjacency
// over windows and report normalized degree shares.
struct AssociationResult {
    std::vector<std::vector<long>> adjacency_sum;  // symmetric, zero diagonal
    std::vector<double> association_score;         // sums to 1
    std::vector<std::vector<int>> window_clusters;
    bool zero_interaction = false;  // no pair ever co-clustered
};

inline AssociationResult agent_association(const MarkerMatrix& matrix, int k,
                                           std::uint64_t seed) {
    const int n = matrix.n_sheep();
    if (matrix.n_windows() < 2)
        throw InsufficientDataError("agent_association: need at least 2 windows");

    AssociationResult out;
    out.adjacency_sum.assign(n, std::vector<long>(n, 0));
    for (int w = 0; w < matrix.n_windows(); ++w) {
        const AgentProfileL1 profile = agent_l1_profile(matrix, w);
        const KMeansResult clusters =
            kmeans(profile.normalized_rows, k, seed + static_cast<std::uint64_t>(w));
        out.window_clusters.push_back(clusters.assignment);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (clusters.assignment[i] == clusters.assignment[j]) {
                    ++out.adjacency_sum[i][j];
                    ++out.adjacency_sum[j][i];
                }
    }

    std::vector<double> degree(n, 0.0);
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) degree[i] += out.adjacency_sum[i][j];
        total += degree[i];
    }
    if (total > 0.0) {
        out.association_score.assign(n, 0.0);
        for (int i = 0; i < n; ++i) out.association_score[i] = degree[i] / total;
    } else {
        out.zero_interaction = true;
        out.association_score.assign(n, 1.0 / n);
    }
    return out;
}

// Algorithm "swarm attention points": per window, the minimal set of agents
// whose descending share prefix reaches eta. Ties sort by agent index.
struct AttentionResult {
    double eta = 0.5;
    std::vector<std::vector<char>> membership;  // [window][agent]
    std::vector<double> attention_fraction;     // share of windows in Q, per agent
};

inline std::vector<char> attention_set(const std::vector<double>& shares, double eta) {
    const int n = static_cast<int>(shares.size());
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return shares[a] > shares[b]; });
    std::vector<char> member(n, 0);
    double cumulative = 0.0;
    for (int i : order) {
        if (cumulative >= eta || shares[i] <= 0.0) break;
        member[i] = 1;
        cumulative += shares[i];
    }
    return member;
}

inline AttentionResult attention_points(const std::vector<std::vector<double>>& window_shares,
                                        double eta) {
    if (eta <= 0.0 || eta > 1.0) throw ConfigError("eta must be in (0, 1]");
    AttentionResult out;
    out.eta = eta;
    if (window_shares.empty()) return out;
    const int n = static_cast<int>(window_shares.front().size());
    std::vector<long> hits(n, 0);
    for (const auto& shares : window_shares) {
        out.membership.push_back(attention_set(shares, eta));
        for (int i = 0; i < n; ++i) hits[i] += out.membership.back()[i];
    }
    out.attention_fraction.assign(n, 0.0);
    for (int i = 0; i < n; ++i)
        out.attention_fraction[i] =
            static_cast<double>(hits[i]) / static_cast<double>(window_shares.size());
    return out;
}

// Descriptive statistics over per-agent values, expressed as percentages.
inline SummaryStats summarize_percent(const std::vector<double>& per_agent_values) {
    std::vector<double> scaled(per_agent_values.size());
    for (std::size_t i = 0; i < scaled.size(); ++i) scaled[i] = 100.0 * per_agent_values[i];
    return summary_stats(scaled);
}

}  // namespace swarm
