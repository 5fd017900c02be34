#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "swarm/profiles.hpp"
#include "swarm/rng.hpp"
#include "swarm/trajectory.hpp"
#include "swarm/vec2.hpp"

namespace swarm {

enum class ShepherdMode { Drive, Collect };

struct ShepherdDecision {
    ShepherdMode mode = ShepherdMode::Drive;
    Vec2 target;
};

struct SimState {
    ScenarioSpec spec;
    std::vector<Vec2> sheep_pos;
    std::vector<Vec2> sheep_heading;  // unit vectors; zero until a sheep first moves
    std::vector<AgentProfile> profiles;
    Vec2 shepherd_pos;
    Vec2 shepherd_heading;
    long tick = 0;
    Rng rng{0};

    int n_sheep() const { return static_cast<int>(sheep_pos.size()); }
    int lcm_neighbours() const {
        const int n = spec.sim_constants.n_neighbours;
        return n > 0 ? n : n_sheep() - 1;
    }
};

inline Vec2 global_centre_of_mass(const std::vector<Vec2>& sheep) {
    Vec2 s;
    for (const Vec2& p : sheep) s += p;
    return s * (1.0 / static_cast<double>(sheep.size()));
}

// Flock is considered gathered when every sheep lies within this radius of
// the global centre of mass.
inline double gather_radius(double r_a, int n_sheep) {
    return r_a * std::pow(static_cast<double>(n_sheep), 2.0 / 3.0);
}

// Combined steering vector for sheep i, evaluated against the current state.
// The noise direction is drawn by the caller so this stays a pure function.
// Each contribution is a unit vector before weighting; the result is
// normalised to unit length when nonzero.
inline Vec2 sheep_force(const SimState& state, int i, const Vec2& noise_dir) {
    const SimConstants& c = state.spec.sim_constants;
    const AgentProfile& prof = state.profiles[i];
    const Vec2 p = state.sheep_pos[i];
    const bool shepherd_near = distance(p, state.shepherd_pos) <= c.r_shepherd_detect;

    Vec2 force = c.inertia * state.sheep_heading[i];

    if (shepherd_near) {
        // Attraction to the local centre of mass of the nearest neighbours.
        const int n_lcm = std::min(state.lcm_neighbours(), state.n_sheep() - 1);
        if (n_lcm > 0) {
            std::vector<std::pair<double, int>> by_dist;
            by_dist.reserve(state.n_sheep() - 1);
            for (int j = 0; j < state.n_sheep(); ++j) {
                if (j == i) continue;
                by_dist.emplace_back((state.sheep_pos[j] - p).norm2(), j);
            }
            std::partial_sort(by_dist.begin(), by_dist.begin() + n_lcm, by_dist.end());
            Vec2 lcm;
            for (int k = 0; k < n_lcm; ++k) lcm += state.sheep_pos[by_dist[k].second];
            lcm *= 1.0 / static_cast<double>(n_lcm);
            force += prof.w_lcm * unit_or_zero(lcm - p);
        }
        force += prof.w_beta * unit_or_zero(p - state.shepherd_pos);
    }

    // Short-range repulsion from other sheep is always active.
    Vec2 repulse;
    for (int j = 0; j < state.n_sheep(); ++j) {
        if (j == i) continue;
        if (distance(state.sheep_pos[j], p) < c.r_agent_repulse)
            repulse += unit_or_zero(p - state.sheep_pos[j]);
    }
    force += prof.w_pipi * unit_or_zero(repulse);

    force += c.noise_scale * noise_dir;
    return unit_or_zero(force);
}

// Drive/collect decision from the current sheep configuration.
inline ShepherdDecision shepherd_step(const SimState& state) {
    const SimConstants& c = state.spec.sim_constants;
    const Vec2 gcm = global_centre_of_mass(state.sheep_pos);
    const double f_n = gather_radius(c.r_agent_repulse, state.n_sheep());

    double furthest_d = -1.0;
    int furthest = 0;
    for (int i = 0; i < state.n_sheep(); ++i) {
        const double d = distance(state.sheep_pos[i], gcm);
        if (d > furthest_d) { furthest_d = d; furthest = i; }
    }

    ShepherdDecision out;
    if (furthest_d <= f_n) {
        out.mode = ShepherdMode::Drive;
        const double back = c.r_agent_repulse * std::sqrt(static_cast<double>(state.n_sheep()));
        out.target = gcm + back * unit_or_zero(gcm - state.spec.goal);
    } else {
        out.mode = ShepherdMode::Collect;
        const Vec2 astray = state.sheep_pos[furthest];
        out.target = astray + c.r_agent_repulse * unit_or_zero(astray - gcm);
    }
    return out;
}

namespace detail {

// True when a sheep should freeze the shepherd: within the freeze radius and
// not hidden in the blind cone behind the shepherd's heading.
inline bool sheep_blocks_shepherd(const SimState& state, const Vec2& sheep) {
    const SimConstants& c = state.spec.sim_constants;
    const Vec2 rel = sheep - state.shepherd_pos;
    if (rel.norm() >= c.freeze_factor * c.r_agent_repulse) return false;
    if (c.blind_angle_behind_beta > 0.0 && state.shepherd_heading.norm2() > 0.0) {
        const double cos_to_back = (-1.0 * state.shepherd_heading).dot(unit_or_zero(rel));
        if (cos_to_back > std::cos(c.blind_angle_behind_beta / 2.0)) return false;
    }
    return true;
}

}  // namespace detail

// One synchronous tick: all sheep move from the pre-step snapshot, then the
// shepherd acts. The RNG stream is consumed in fixed agent order (one noise
// direction and one grazing draw per sheep) so runs are reproducible.
inline void step(SimState& state) {
    const SimConstants& c = state.spec.sim_constants;
    const int n = state.n_sheep();

    std::vector<Vec2> noise(n);
    std::vector<double> graze(n);
    for (int i = 0; i < n; ++i) {
        noise[i] = state.rng.unit_vector();
        graze[i] = state.rng.uniform();
    }

    const SimState& snapshot = state;
    std::vector<Vec2> new_pos(n);
    std::vector<Vec2> new_heading(n);
    for (int i = 0; i < n; ++i) {
        const bool shepherd_near =
            distance(snapshot.sheep_pos[i], snapshot.shepherd_pos) <= c.r_shepherd_detect;
        const bool moves = shepherd_near || graze[i] < c.grazing_prob;
        Vec2 dir;
        if (moves) dir = sheep_force(snapshot, i, noise[i]);
        const double speed = snapshot.profiles[i].speed_ratio * c.base_speed_beta;
        new_pos[i] = snapshot.sheep_pos[i] + speed * dir;
        new_heading[i] = dir.norm2() > 0.0 ? dir : snapshot.sheep_heading[i];
    }
    state.sheep_pos = std::move(new_pos);
    state.sheep_heading = std::move(new_heading);

    bool frozen = false;
    for (int i = 0; i < n && !frozen; ++i)
        frozen = detail::sheep_blocks_shepherd(state, state.sheep_pos[i]);
    if (!frozen) {
        const ShepherdDecision decision = shepherd_step(state);
        const Vec2 to_target = decision.target - state.shepherd_pos;
        const double d = to_target.norm();
        const double stride = std::min(c.base_speed_beta, d);
        const Vec2 dir = unit_or_zero(to_target);
        state.shepherd_pos += stride * dir;
        if (dir.norm2() > 0.0) state.shepherd_heading = dir;
    }
    ++state.tick;
}

// Places sheep uniformly in the half of the arena nearest the corner opposite
// the goal, the shepherd at the corner nearest the goal. Profile assignment
// is a seeded shuffle of the scenario mixture.
inline SimState init_scenario(const ScenarioSpec& spec, std::uint64_t seed) {
    spec.validate();
    SimState state;
    state.spec = spec;
    state.rng = Rng(seed);

    std::vector<ProfileId> labels = spec.profile_counts_expanded();
    state.rng.shuffle(labels);
    state.profiles.reserve(labels.size());
    for (ProfileId id : labels) state.profiles.push_back(canonical_profile(id));

    const double side = spec.arena_side;
    const std::array<Vec2, 4> corners{Vec2{0, 0}, Vec2{side, 0}, Vec2{0, side}, Vec2{side, side}};
    const Vec2 near_corner = *std::min_element(
        corners.begin(), corners.end(),
        [&](const Vec2& a, const Vec2& b) { return distance(a, spec.goal) < distance(b, spec.goal); });
    const Vec2 far_corner = *std::max_element(
        corners.begin(), corners.end(),
        [&](const Vec2& a, const Vec2& b) { return distance(a, spec.goal) < distance(b, spec.goal); });

    state.sheep_pos.resize(spec.n_sheep);
    for (int i = 0; i < spec.n_sheep; ++i) {
        Vec2 p;
        do {
            p = {state.rng.uniform(0.0, side), state.rng.uniform(0.0, side)};
        } while (distance(p, far_corner) > distance(p, near_corner));
        state.sheep_pos[i] = p;
    }
    state.sheep_heading.assign(spec.n_sheep, Vec2{0.0, 0.0});
    state.shepherd_pos = near_corner;
    state.shepherd_heading = {0.0, 0.0};
    state.tick = 0;
    return state;
}

// Runs until the flock centre reaches the goal or max_ticks is hit.
inline Trajectory run_scenario(const ScenarioSpec& spec, std::uint64_t seed) {
    SimState state = init_scenario(spec, seed);

    Trajectory traj;
    traj.dt = 1.0;
    traj.scenario_id = spec.id;
    traj.seed = seed;
    traj.profile_labels.reserve(state.profiles.size());
    for (const AgentProfile& p : state.profiles) traj.profile_labels.push_back(p.label);

    const auto record = [&]() {
        std::vector<Vec2> row = state.sheep_pos;
        row.push_back(state.shepherd_pos);
        traj.positions.push_back(std::move(row));
    };
    record();

    while (true) {
        const Vec2 gcm = global_centre_of_mass(state.sheep_pos);
        if (distance(gcm, spec.goal) <= spec.goal_radius) {
            traj.goal_reached = true;
            break;
        }
        if (state.tick >= spec.max_ticks) break;
        step(state);
        record();
    }
    return traj;
}

}  // namespace swarm
