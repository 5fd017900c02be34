#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "swarm/io.hpp"
#include "swarm/manifest.hpp"
#include "swarm/sim.hpp"

using namespace swarm;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("swarm_io_test_" + std::to_string(::getpid()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("trajectory CSV round trip") {
    ScenarioSpec spec = canonical_scenario(ScenarioId::S1);
    spec.max_ticks = 40;
    spec.goal_radius = 0.0;
    const Trajectory traj = run_scenario(spec, 2);

    TempDir tmp;
    write_file_atomic(tmp.file("traj.csv"), trajectory_to_csv(traj));
    const Trajectory back = trajectory_from_csv(tmp.file("traj.csv"));

    REQUIRE(back.n_ticks() == traj.n_ticks());
    REQUIRE(back.n_sheep() == traj.n_sheep());
    CHECK(back.profile_labels == traj.profile_labels);
    for (long t = 0; t < traj.n_ticks(); ++t)
        for (int a = 0; a < traj.n_agents(); ++a)
            CHECK(back.positions[t][a] == traj.positions[t][a]);
}

TEST_CASE("scenario JSON round trip and defaults") {
    const ScenarioSpec spec = canonical_scenario(ScenarioId::S3);
    const json j = scenario_to_json(spec);
    const ScenarioSpec back = scenario_from_json(j);
    CHECK(back.id == spec.id);
    CHECK(back.mixture == spec.mixture);
    CHECK(back.n_sheep == spec.n_sheep);
    CHECK(back.sim_constants.r_shepherd_detect == spec.sim_constants.r_shepherd_detect);

    // Minimal file: id only, everything else canonical.
    const ScenarioSpec minimal = scenario_from_json(json{{"id", "S5"}});
    CHECK(minimal.mixture.at(ProfileId::A7) == 1.0);
    CHECK(minimal.arena_side == 150.0);
}

TEST_CASE("scenario JSON errors name the offending field") {
    CHECK_THROWS_AS(scenario_from_json(json{{"id", "S99"}}), ConfigError);
    CHECK_THROWS_WITH(scenario_from_json(json{{"mixture", {{"A7", 1.0}}}}),
                      Catch::Matchers::ContainsSubstring("id"));
    CHECK_THROWS_WITH(
        scenario_from_json(json{{"id", "S5"}, {"mixture", {{"A9", 1.0}}}}),
        Catch::Matchers::ContainsSubstring("A9"));
    // Non-integer profile counts.
    CHECK_THROWS_AS(
        scenario_from_json(json{{"id", "S5"}, {"mixture", {{"A7", 0.63}, {"A1", 0.37}}}}),
        ConfigError);
}

TEST_CASE("atomic writes leave no temp files behind") {
    TempDir tmp;
    write_file_atomic(tmp.file("x.txt"), "hello");
    CHECK(std::filesystem::exists(tmp.file("x.txt")));
    CHECK_FALSE(std::filesystem::exists(tmp.file("x.txt.tmp")));
    write_file_atomic(tmp.file("x.txt"), "replaced");
    std::ifstream in(tmp.file("x.txt"));
    std::string content;
    std::getline(in, content);
    CHECK(content == "replaced");
}

TEST_CASE("content hashes are stable and content-sensitive") {
    const std::string a = "swarm";
    CHECK(hash_hex(fnv1a64(a)) == hash_hex(fnv1a64(a)));
    CHECK(hash_hex(fnv1a64(a)) != hash_hex(fnv1a64("swarm!")));
    TempDir tmp;
    write_file_atomic(tmp.file("h.txt"), a);
    CHECK(hash_file(tmp.file("h.txt")) == hash_hex(fnv1a64(a)));
}

TEST_CASE("manifest JSON lists outputs with hashes") {
    TempDir tmp;
    RunManifest m;
    m.command = "test";
    write_artifact(m, tmp.file("out.csv"), "a,b\n1,2\n");
    m.write(tmp.file("out.manifest.json"));

    std::ifstream in(tmp.file("out.manifest.json"));
    json j;
    in >> j;
    CHECK(j["command"] == "test");
    CHECK(j["tool_version"] == std::string(kToolVersion));
    REQUIRE(j["outputs"].size() == 1);
    CHECK(j["outputs"][0]["path"] == tmp.file("out.csv"));
    CHECK(j["outputs"][0]["hash"] == hash_hex(fnv1a64("a,b\n1,2\n")));
}
