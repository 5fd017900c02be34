#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "swarm/markers.hpp"
#include "swarm/segment.hpp"
#include "swarm/trajectory.hpp"

namespace swarm {

struct WindowPlan {
    int size = 20;          // w, ticks per window
    double overlap = 0.75;  // alpha, fraction of shared ticks

    // Round-half-up; the canonical grid yields integer strides regardless.
    int stride() const {
        return std::max(1, static_cast<int>(std::floor(size * (1.0 - overlap) + 0.5)));
    }

    void validate() const {
        if (size < 2) throw WindowError("window size must be >= 2");
        if (overlap <= 0.0 || overlap >= 1.0) throw WindowError("overlap must be in (0, 1)");
    }
};

// The 5x3 grid of window settings used throughout the analyses.
inline std::vector<WindowPlan> canonical_plans() {
    std::vector<WindowPlan> out;
    for (int w : {20, 40, 60, 80, 100})
        for (double a : {0.25, 0.50, 0.75}) out.push_back({w, a});
    return out;
}

// Half-open tick ranges [s*j, s*j + w) for j = 0..floor((T-w)/s).
inline std::vector<std::pair<long, long>> make_windows(long n_ticks, const WindowPlan& plan) {
    plan.validate();
    if (n_ticks < plan.size)
        throw WindowError("trajectory of " + std::to_string(n_ticks) +
                          " ticks is shorter than window size " + std::to_string(plan.size));
    const long s = plan.stride();
    std::vector<std::pair<long, long>> out;
    for (long start = 0; start + plan.size <= n_ticks; start += s)
        out.emplace_back(start, start + plan.size);
    return out;
}

// Marker values for every (window, sheep) of one trajectory, with per-window
// compute timing for the cost analyses.
struct MarkerMatrix {
    std::vector<int> marker_ids;
    WindowPlan plan;
    ScenarioId scenario_id = ScenarioId::S5;
    std::uint64_t seed = 0;
    std::vector<ProfileId> profile_labels;
    std::vector<std::pair<long, long>> window_ranges;
    std::vector<WindowMarkers> windows;
    std::vector<std::vector<bool>> degenerate_columns;  // set by zscore_normalize
    double window_time_mean_s = 0.0;
    double total_time_s = 0.0;

    int n_windows() const { return static_cast<int>(windows.size()); }
    int n_sheep() const { return static_cast<int>(profile_labels.size()); }
    int n_markers() const { return static_cast<int>(marker_ids.size()); }
};

inline Segment segment_of(const Trajectory& traj, long begin, long end) {
    Segment seg;
    seg.n_sheep = traj.n_sheep();
    seg.dt = traj.dt;
    seg.positions.assign(traj.positions.begin() + begin, traj.positions.begin() + end);
    return seg;
}

inline MarkerMatrix compute_marker_matrix(const Trajectory& traj, const WindowPlan& plan,
                                          std::vector<int> marker_ids,
                                          const MarkerConfig& cfg = {}) {
    MarkerMatrix out;
    out.marker_ids = std::move(marker_ids);
    out.plan = plan;
    out.scenario_id = traj.scenario_id;
    out.seed = traj.seed;
    out.profile_labels = traj.profile_labels;
    out.window_ranges = make_windows(traj.n_ticks(), plan);

    using clock = std::chrono::steady_clock;
    for (const auto& [begin, end] : out.window_ranges) {
        const Segment seg = segment_of(traj, begin, end);
        const auto t0 = clock::now();
        out.windows.push_back(compute_window_markers(seg, out.marker_ids, cfg));
        const auto t1 = clock::now();
        out.total_time_s += std::chrono::duration<double>(t1 - t0).count();
    }
    if (!out.windows.empty())
        out.window_time_mean_s = out.total_time_s / static_cast<double>(out.windows.size());
    return out;
}

// Vector-wise z-score per (window, marker) column across agents, population
// standard deviation. Zero-variance columns become all zeros and are flagged.
// Masked cells are left untouched and excluded from the statistics.
inline MarkerMatrix zscore_normalize(const MarkerMatrix& matrix) {
    MarkerMatrix out = matrix;
    out.degenerate_columns.assign(out.n_windows(),
                                  std::vector<bool>(out.n_markers(), false));
    for (int w = 0; w < out.n_windows(); ++w) {
        WindowMarkers& win = out.windows[w];
        for (int s = 0; s < out.n_markers(); ++s) {
            std::vector<double> col;
            for (int i = 0; i < out.n_sheep(); ++i)
                if (win.available[i][s]) col.push_back(win.values[i][s]);
            if (col.size() < 2) {
                out.degenerate_columns[w][s] = true;
                continue;
            }
            const double m = mean(col);
            const double sd = stddev(col);
            if (sd <= 1e-15) {
                for (int i = 0; i < out.n_sheep(); ++i)
                    if (win.available[i][s]) win.values[i][s] = 0.0;
                out.degenerate_columns[w][s] = true;
                continue;
            }
            for (int i = 0; i < out.n_sheep(); ++i)
                if (win.available[i][s]) win.values[i][s] = (win.values[i][s] - m) / sd;
        }
    }
    return out;
}

}  // namespace swarm
