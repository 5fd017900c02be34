#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "swarm/stats.hpp"
#include "swarm/vec2.hpp"

namespace swarm {

struct WindowError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One observation window: k consecutive ticks of positions for all agents
// (sheep 0..n_sheep-1, shepherd at index n_sheep).
struct Segment {
    std::vector<std::vector<Vec2>> positions;  // [tick][agent]
    int n_sheep = 0;
    double dt = 1.0;

    int n_ticks() const { return static_cast<int>(positions.size()); }
    int n_agents() const { return n_sheep + 1; }
    int shepherd() const { return n_sheep; }

    void require_ticks(int k, const char* what) const {
        if (n_ticks() < k)
            throw WindowError(std::string(what) + ": window needs at least " +
                              std::to_string(k) + " ticks, got " + std::to_string(n_ticks()));
    }
};

// Per-step displacement magnitudes / dt; length k-1.
inline std::vector<double> speed_series(const Segment& seg, int agent) {
    std::vector<double> out;
    out.reserve(seg.n_ticks() - 1);
    for (int t = 0; t + 1 < seg.n_ticks(); ++t)
        out.push_back(distance(seg.positions[t + 1][agent], seg.positions[t][agent]) / seg.dt);
    return out;
}

// Heading angle per step from atan2 of the displacement; zero-length steps
// repeat the previous heading (0 if none yet). Length k-1.
inline std::vector<double> heading_series(const Segment& seg, int agent) {
    std::vector<double> out;
    out.reserve(seg.n_ticks() - 1);
    double last = 0.0;
    for (int t = 0; t + 1 < seg.n_ticks(); ++t) {
        const Vec2 d = seg.positions[t + 1][agent] - seg.positions[t][agent];
        if (d.norm2() > 0.0) last = std::atan2(d.y, d.x);
        out.push_back(last);
    }
    return out;
}

// Wrapped heading change per step pair / dt; zero when either displacement is
// zero. Length k-2.
inline std::vector<double> heading_change_series(const Segment& seg, int agent) {
    std::vector<double> out;
    out.reserve(std::max(0, seg.n_ticks() - 2));
    for (int t = 0; t + 2 < seg.n_ticks(); ++t) {
        const Vec2 d0 = seg.positions[t + 1][agent] - seg.positions[t][agent];
        const Vec2 d1 = seg.positions[t + 2][agent] - seg.positions[t + 1][agent];
        if (d0.norm2() == 0.0 || d1.norm2() == 0.0) {
            out.push_back(0.0);
            continue;
        }
        const double a0 = std::atan2(d0.y, d0.x);
        const double a1 = std::atan2(d1.y, d1.x);
        out.push_back(wrap_angle(a1 - a0) / seg.dt);
    }
    return out;
}

// Second differences of position / dt^2, as 2D vectors; length k-2.
inline std::vector<Vec2> acceleration_series(const Segment& seg, int agent) {
    std::vector<Vec2> out;
    out.reserve(std::max(0, seg.n_ticks() - 2));
    const double dt2 = seg.dt * seg.dt;
    for (int t = 0; t + 2 < seg.n_ticks(); ++t) {
        const Vec2 a = seg.positions[t + 2][agent] - 2.0 * seg.positions[t + 1][agent] +
                       seg.positions[t][agent];
        out.push_back({a.x / dt2, a.y / dt2});
    }
    return out;
}

// Distance from a sheep to the shepherd at each tick; length k.
inline std::vector<double> shepherd_distance_series(const Segment& seg, int agent) {
    std::vector<double> out;
    out.reserve(seg.n_ticks());
    for (int t = 0; t < seg.n_ticks(); ++t)
        out.push_back(distance(seg.positions[t][agent], seg.positions[t][seg.shepherd()]));
    return out;
}

}  // namespace swarm
