#pragma once

#include <cstdint>
#include <vector>

#include "swarm/profiles.hpp"
#include "swarm/vec2.hpp"

namespace swarm {

// Tick-major positions of all agents. Agents 0..n_sheep-1 are sheep, agent
// n_sheep is the shepherd.
struct Trajectory {
    std::vector<std::vector<Vec2>> positions;  // [tick][agent]
    double dt = 1.0;
    std::vector<ProfileId> profile_labels;     // per sheep
    ScenarioId scenario_id = ScenarioId::S5;
    std::uint64_t seed = 0;
    bool goal_reached = false;                 // false means truncated at max_ticks

    int n_sheep() const { return static_cast<int>(profile_labels.size()); }
    int n_agents() const { return n_sheep() + 1; }
    int shepherd_index() const { return n_sheep(); }
    long n_ticks() const { return static_cast<long>(positions.size()); }
};

}  // namespace swarm
