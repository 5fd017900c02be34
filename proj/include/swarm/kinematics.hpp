#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "swarm/segment.hpp"
#include "swarm/stats.hpp"

namespace swarm {

// M1..M6, M14, M17..M20 for one agent.
struct KinematicStats {
    double segment_speed = 0.0;        // M1: net displacement over elapsed time
    double path_rate = 0.0;            // M2: path length over elapsed time
    double speed_mean = 0.0;           // M3
    double speed_var = 0.0;            // M4
    double heading_mean = 0.0;         // M5 (circular)
    double heading_var = 0.0;          // M6 (circular)
    double turn_rate = 0.0;            // M14: mean wrapped heading change per tick
    double shepherd_dist_mean = 0.0;   // M17
    double shepherd_dist_var = 0.0;    // M18
    double shepherd_dist_max = 0.0;    // M19
    double shepherd_dist_min = 0.0;    // M20
};

inline KinematicStats kinematic_stats(const Segment& seg, int agent) {
    seg.require_ticks(3, "kinematic_stats");
    KinematicStats out;

    const double elapsed = (seg.n_ticks() - 1) * seg.dt;
    out.segment_speed =
        distance(seg.positions.back()[agent], seg.positions.front()[agent]) / elapsed;

    const std::vector<double> speeds = speed_series(seg, agent);
    double path = 0.0;
    for (double s : speeds) path += s * seg.dt;
    out.path_rate = path / elapsed;
    out.speed_mean = mean(speeds);
    out.speed_var = variance(speeds);

    const std::vector<double> headings = heading_series(seg, agent);
    out.heading_mean = circular_mean(headings);
    out.heading_var = circular_variance(headings);

    out.turn_rate = mean(heading_change_series(seg, agent));

    const std::vector<double> dists = shepherd_distance_series(seg, agent);
    out.shepherd_dist_mean = mean(dists);
    out.shepherd_dist_var = variance(dists);
    out.shepherd_dist_max = max_of(dists);
    out.shepherd_dist_min = min_of(dists);
    return out;
}

// M11..M13 for one agent: dynamic body acceleration from second differences,
// with the vertical axis omitted.
struct DbaStats {
    double dba_mean = 0.0;  // M11
    double dba_var = 0.0;   // M12
    double odba = 0.0;      // M13: sum of |a_x| + |a_y| over the window
};

inline DbaStats dba_stats(const Segment& seg, int agent) {
    seg.require_ticks(3, "dba_stats");
    const std::vector<Vec2> accel = acceleration_series(seg, agent);
    std::vector<double> mags;
    mags.reserve(accel.size());
    DbaStats out;
    for (const Vec2& a : accel) {
        mags.push_back(a.norm());
        out.odba += std::abs(a.x) + std::abs(a.y);
    }
    out.dba_mean = mean(mags);
    out.dba_var = variance(mags);
    return out;
}

// Normalized cross-correlation coefficient between x and y at an integer lag:
// Pearson correlation of x[t] against y[t + lag] over the overlap.
inline double cross_correlation_at_lag(std::span<const double> x, std::span<const double> y,
                                       int lag) {
    const int n = static_cast<int>(std::min(x.size(), y.size()));
    const int overlap = n - std::abs(lag);
    if (overlap < 2) return 0.0;
    const int x_start = lag < 0 ? -lag : 0;
    const int y_start = lag > 0 ? lag : 0;
    return pearson(x.subspan(x_start, overlap), y.subspan(y_start, overlap));
}

// M15/M16: mean and variance of the agent-vs-shepherd speed cross-correlation
// over lags -floor(k/4) .. floor(k/4).
struct CrossCorrelationStats {
    double xcorr_mean = 0.0;  // M15
    double xcorr_var = 0.0;   // M16
    std::vector<double> per_lag;
};

inline CrossCorrelationStats cross_correlation_stats(const Segment& seg, int agent) {
    seg.require_ticks(4, "cross_correlation_stats");
    const std::vector<double> x = speed_series(seg, agent);
    const std::vector<double> y = speed_series(seg, seg.shepherd());
    const int max_lag = seg.n_ticks() / 4;
    CrossCorrelationStats out;
    for (int lag = -max_lag; lag <= max_lag; ++lag)
        out.per_lag.push_back(cross_correlation_at_lag(x, y, lag));
    out.xcorr_mean = mean(out.per_lag);
    out.xcorr_var = variance(out.per_lag);
    return out;
}

}  // namespace swarm
