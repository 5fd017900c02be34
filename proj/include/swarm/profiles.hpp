#pragma once

#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "swarm/vec2.hpp"

namespace swarm {

// Thrown for invalid scenario configuration (bad mixtures, malformed files).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class ProfileId { A1, A2, A3, A4, A5, A6, A7 };
inline constexpr int kNumProfiles = 7;

// Behavioural weights of a sheep agent: attraction to the local centre of
// mass, repulsion from other sheep, repulsion from the shepherd, and the
// sheep/shepherd speed ratio.
struct AgentProfile {
    ProfileId label = ProfileId::A7;
    double w_lcm = 0.0;
    double w_pipi = 0.0;
    double w_beta = 0.0;
    double speed_ratio = 0.0;

    bool valid() const {
        return w_lcm > 0.0 && w_pipi > 0.0 && w_beta > 0.0 &&
               speed_ratio > 0.0 && speed_ratio <= 1.0;
    }
};

inline const char* to_string(ProfileId p) {
    static constexpr const char* names[] = {"A1", "A2", "A3", "A4", "A5", "A6", "A7"};
    return names[static_cast<int>(p)];
}

inline std::optional<ProfileId> profile_from_string(const std::string& s) {
    for (int i = 0; i < kNumProfiles; ++i) {
        if (s == to_string(static_cast<ProfileId>(i))) return static_cast<ProfileId>(i);
    }
    return std::nullopt;
}

// The seven canonical profile parameterisations.
inline AgentProfile canonical_profile(ProfileId id) {
    switch (id) {
        case ProfileId::A1: return {id, 0.50, 2.00, 0.50, 1.00};  // scout
        case ProfileId::A2: return {id, 1.50, 2.00, 0.50, 0.50};  // control detractor
        case ProfileId::A3: return {id, 0.50, 3.00, 1.00, 0.67};  // swarm detractor
        case ProfileId::A4: return {id, 0.50, 2.00, 1.90, 0.67};  // nomad
        case ProfileId::A5: return {id, 1.05, 3.00, 1.00, 0.67};  // dispersed
        case ProfileId::A6: return {id, 1.05, 1.50, 1.00, 0.50};  // unwilling
        case ProfileId::A7: return {id, 1.05, 2.00, 1.00, 0.67};  // classic
    }
    throw ConfigError("unknown profile id");
}

struct SimConstants {
    double r_shepherd_detect = 65.0;    // sheep react to the shepherd inside this radius
    double r_agent_repulse = 2.0;       // r_a, sheep-sheep repulsion radius
    int n_neighbours = 0;               // LCM neighbourhood size; 0 means N-1
    double inertia = 0.5;               // h, weight of the previous heading
    double noise_scale = 0.3;           // e, weight of the angular noise term
    double base_speed_beta = 1.5;       // shepherd speed per tick
    double blind_angle_behind_beta = 0.0;  // radians; sheep inside this cone behind the
                                           // shepherd's heading do not trigger its freeze
    double grazing_prob = 0.05;         // per-tick move probability when the shepherd is out of range
    double freeze_factor = 3.0;         // shepherd freezes within freeze_factor * r_a of a sheep

    void validate(int n_sheep) const {
        if (r_shepherd_detect <= 0.0 || r_agent_repulse <= 0.0 || base_speed_beta <= 0.0)
            throw ConfigError("sim_constants: lengths and speeds must be positive");
        if (n_neighbours < 0 || n_neighbours >= n_sheep)
            throw ConfigError("sim_constants.n_neighbours must be in [0, N)");
        if (inertia < 0.0 || inertia >= 1.0)
            throw ConfigError("sim_constants.inertia must be in [0, 1)");
        if (noise_scale < 0.0)
            throw ConfigError("sim_constants.noise_scale must be >= 0");
        if (grazing_prob < 0.0 || grazing_prob > 1.0)
            throw ConfigError("sim_constants.grazing_prob must be in [0, 1]");
    }
};

enum class ScenarioId { S1, S2, S3, S4, S5, S6, S7, S8, S9, S10, S11 };
inline constexpr int kNumScenarios = 11;

inline const char* to_string(ScenarioId s) {
    static constexpr const char* names[] = {"S1", "S2", "S3", "S4",  "S5", "S6",
                                            "S7", "S8", "S9", "S10", "S11"};
    return names[static_cast<int>(s)];
}

inline std::optional<ScenarioId> scenario_from_string(const std::string& s) {
    for (int i = 0; i < kNumScenarios; ++i) {
        if (s == to_string(static_cast<ScenarioId>(i))) return static_cast<ScenarioId>(i);
    }
    return std::nullopt;
}

// Scenarios S1..S4 mix agent types; S5..S11 are homogeneous.
inline bool is_heterogeneous(ScenarioId s) {
    return static_cast<int>(s) < 4;
}

struct ScenarioSpec {
    ScenarioId id = ScenarioId::S5;
    std::map<ProfileId, double> mixture;  // profile -> fraction, sums to 1
    int n_sheep = 20;
    double arena_side = 150.0;
    Vec2 goal{0.0, 0.0};
    double goal_radius = 15.0;
    long max_ticks = 8000;
    SimConstants sim_constants;

    void validate() const {
        if (n_sheep < 1) throw ConfigError("n_sheep must be >= 1");
        if (arena_side <= 0.0) throw ConfigError("arena_side must be > 0");
        if (goal_radius < 0.0) throw ConfigError("goal_radius must be >= 0");
        if (max_ticks < 0) throw ConfigError("max_ticks must be >= 0");
        sim_constants.validate(n_sheep);
        double total = 0.0;
        for (const auto& [profile, frac] : mixture) {
            if (frac < 0.0) throw ConfigError("mixture fractions must be >= 0");
            total += frac;
            const double count = frac * n_sheep;
            if (std::abs(count - std::round(count)) > 1e-9)
                throw ConfigError(std::string("mixture: ") + to_string(profile) +
                                  " does not yield an integer agent count");
        }
        if (std::abs(total - 1.0) > 1e-9) throw ConfigError("mixture fractions must sum to 1");
    }

    // Profile label per sheep, in canonical A1..A7 order (pre-shuffle).
    std::vector<ProfileId> profile_counts_expanded() const {
        std::vector<ProfileId> labels;
        labels.reserve(n_sheep);
        for (int p = 0; p < kNumProfiles; ++p) {
            const auto id_p = static_cast<ProfileId>(p);
            const auto it = mixture.find(id_p);
            if (it == mixture.end()) continue;
            const int count = static_cast<int>(std::llround(it->second * n_sheep));
            for (int c = 0; c < count; ++c) labels.push_back(id_p);
        }
        return labels;
    }
};

inline ScenarioSpec canonical_scenario(ScenarioId id) {
    using P = ProfileId;
    ScenarioSpec spec;
    spec.id = id;
    switch (id) {
        case ScenarioId::S1: spec.mixture = {{P::A1, 0.20}, {P::A7, 0.80}}; break;
        case ScenarioId::S2:
            spec.mixture = {{P::A2, 0.20}, {P::A3, 0.20}, {P::A6, 0.20}, {P::A7, 0.40}};
            break;
        case ScenarioId::S3: spec.mixture = {{P::A4, 0.80}, {P::A7, 0.20}}; break;
        case ScenarioId::S4: spec.mixture = {{P::A1, 0.20}, {P::A5, 0.20}, {P::A7, 0.60}}; break;
        case ScenarioId::S5: spec.mixture = {{P::A7, 1.00}}; break;
        case ScenarioId::S6: spec.mixture = {{P::A1, 1.00}}; break;
        case ScenarioId::S7: spec.mixture = {{P::A2, 1.00}}; break;
        case ScenarioId::S8: spec.mixture = {{P::A3, 1.00}}; break;
        case ScenarioId::S9: spec.mixture = {{P::A4, 1.00}}; break;
        case ScenarioId::S10: spec.mixture = {{P::A5, 1.00}}; break;
        case ScenarioId::S11: spec.mixture = {{P::A6, 1.00}}; break;
    }
    return spec;
}

}  // namespace swarm
