#pragma once

#include <filesystem>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include "swarm/csv.hpp"
#include "swarm/profiles.hpp"
#include "swarm/trajectory.hpp"

namespace swarm {

using json = nlohmann::json;

// Atomic file write: write to a temp sibling, then rename over the target.
inline void write_file_atomic(const std::string& path, const std::string& content) {
    const std::filesystem::path target(path);
    if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path());
    const std::filesystem::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write " + tmp.string());
        out << content;
    }
    std::filesystem::rename(tmp, target);
}

// --- Trajectory CSV: tick,agent_id,kind,profile,x,y ----------------------

inline std::string trajectory_to_csv(const Trajectory& traj) {
    std::string out = "tick,agent_id,kind,profile,x,y\n";
    for (long t = 0; t < traj.n_ticks(); ++t) {
        for (int a = 0; a < traj.n_agents(); ++a) {
            const bool shepherd = a == traj.shepherd_index();
            out += std::to_string(t);
            out += ',';
            out += std::to_string(a);
            out += ',';
            out += shepherd ? "shepherd" : "sheep";
            out += ',';
            if (!shepherd) out += to_string(traj.profile_labels[a]);
            out += ',';
            out += format_double(traj.positions[t][a].x);
            out += ',';
            out += format_double(traj.positions[t][a].y);
            out += '\n';
        }
    }
    return out;
}

inline Trajectory trajectory_from_csv(const std::string& path) {
    const auto lines = read_lines(path);
    if (lines.empty() || split_csv_line(lines[0]).size() != 6)
        throw IoError(path + ": expected header tick,agent_id,kind,profile,x,y");

    Trajectory traj;
    int n_agents = 0;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        if (lines[li].empty()) continue;
        const auto f = split_csv_line(lines[li]);
        if (f.size() != 6) throw IoError(path + ": bad row at line " + std::to_string(li + 1));
        const long tick = parse_long(f[0]);
        const int agent = static_cast<int>(parse_long(f[1]));
        if (tick == static_cast<long>(traj.positions.size())) traj.positions.emplace_back();
        if (tick != static_cast<long>(traj.positions.size()) - 1)
            throw IoError(path + ": ticks out of order at line " + std::to_string(li + 1));
        auto& row = traj.positions.back();
        if (agent != static_cast<int>(row.size()))
            throw IoError(path + ": agent ids out of order at line " + std::to_string(li + 1));
        row.push_back({parse_double(f[4]), parse_double(f[5])});
        if (tick == 0) {
            ++n_agents;
            if (f[2] == "sheep") {
                const auto p = profile_from_string(f[3]);
                if (!p) throw IoError(path + ": unknown profile '" + f[3] + "'");
                traj.profile_labels.push_back(*p);
            }
        }
    }
    for (const auto& row : traj.positions)
        if (static_cast<int>(row.size()) != n_agents)
            throw IoError(path + ": ragged tick rows");
    if (static_cast<int>(traj.profile_labels.size()) + 1 != n_agents)
        throw IoError(path + ": expected exactly one shepherd row per tick");
    return traj;
}

// --- Scenario JSON --------------------------------------------------------

inline json scenario_to_json(const ScenarioSpec& spec) {
    json mixture = json::object();
    for (const auto& [profile, frac] : spec.mixture) mixture[to_string(profile)] = frac;
    const SimConstants& c = spec.sim_constants;
    return json{
        {"id", to_string(spec.id)},
        {"mixture", mixture},
        {"n_sheep", spec.n_sheep},
        {"arena_side", spec.arena_side},
        {"goal", {spec.goal.x, spec.goal.y}},
        {"goal_radius", spec.goal_radius},
        {"max_ticks", spec.max_ticks},
        {"sim_constants",
         {{"r_shepherd_detect", c.r_shepherd_detect},
          {"r_agent_repulse", c.r_agent_repulse},
          {"n_neighbours", c.n_neighbours},
          {"inertia", c.inertia},
          {"noise_scale", c.noise_scale},
          {"base_speed_beta", c.base_speed_beta},
          {"blind_angle_behind_beta", c.blind_angle_behind_beta},
          {"grazing_prob", c.grazing_prob},
          {"freeze_factor", c.freeze_factor}}},
    };
}

// Parses a scenario file. Only "id" is required; unspecified fields fall back
// to the canonical scenario definition and default constants.
inline ScenarioSpec scenario_from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("scenario: expected a JSON object");
    if (!j.contains("id") || !j["id"].is_string())
        throw ConfigError("scenario: missing string field 'id'");
    const auto id = scenario_from_string(j["id"].get<std::string>());
    if (!id) throw ConfigError("scenario: unknown id '" + j["id"].get<std::string>() + "'");

    ScenarioSpec spec = canonical_scenario(*id);
    try {
        if (j.contains("mixture")) {
            spec.mixture.clear();
            for (const auto& [key, value] : j["mixture"].items()) {
                const auto p = profile_from_string(key);
                if (!p) throw ConfigError("scenario: unknown profile '" + key + "' in mixture");
                spec.mixture[*p] = value.get<double>();
            }
        }
        if (j.contains("n_sheep")) spec.n_sheep = j["n_sheep"].get<int>();
        if (j.contains("arena_side")) spec.arena_side = j["arena_side"].get<double>();
        if (j.contains("goal")) {
            spec.goal = {j["goal"].at(0).get<double>(), j["goal"].at(1).get<double>()};
        }
        if (j.contains("goal_radius")) spec.goal_radius = j["goal_radius"].get<double>();
        if (j.contains("max_ticks")) spec.max_ticks = j["max_ticks"].get<long>();
        if (j.contains("sim_constants")) {
            const json& c = j["sim_constants"];
            SimConstants& sc = spec.sim_constants;
            if (c.contains("r_shepherd_detect")) sc.r_shepherd_detect = c["r_shepherd_detect"].get<double>();
            if (c.contains("r_agent_repulse")) sc.r_agent_repulse = c["r_agent_repulse"].get<double>();
            if (c.contains("n_neighbours")) sc.n_neighbours = c["n_neighbours"].get<int>();
            if (c.contains("inertia")) sc.inertia = c["inertia"].get<double>();
            if (c.contains("noise_scale")) sc.noise_scale = c["noise_scale"].get<double>();
            if (c.contains("base_speed_beta")) sc.base_speed_beta = c["base_speed_beta"].get<double>();
            if (c.contains("blind_angle_behind_beta"))
                sc.blind_angle_behind_beta = c["blind_angle_behind_beta"].get<double>();
            if (c.contains("grazing_prob")) sc.grazing_prob = c["grazing_prob"].get<double>();
            if (c.contains("freeze_factor")) sc.freeze_factor = c["freeze_factor"].get<double>();
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("scenario: ") + e.what());
    }
    spec.validate();
    return spec;
}

inline ScenarioSpec load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError(path + ": invalid JSON: " + e.what());
    }
    return scenario_from_json(j);
}

}  // namespace swarm
