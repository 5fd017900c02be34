#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "swarm/markers.hpp"
#include "swarm/sim.hpp"
#include "swarm/windowing.hpp"

using namespace swarm;

namespace {

Segment window_from_run(ScenarioId id, std::uint64_t seed, long begin, int size) {
    ScenarioSpec spec = canonical_scenario(id);
    spec.max_ticks = begin + size + 10;
    spec.goal_radius = 0.0;
    const Trajectory traj = run_scenario(spec, seed);
    return segment_of(traj, begin, begin + size);
}

Segment rigid_motion(const Segment& seg, double angle, Vec2 shift) {
    Segment out = seg;
    const double c = std::cos(angle), s = std::sin(angle);
    for (auto& tick : out.positions)
        for (Vec2& p : tick) p = Vec2{c * p.x - s * p.y, s * p.x + c * p.y} + shift;
    return out;
}

}  // namespace

TEST_CASE("full marker set is finite wherever available") {
    const Segment seg = window_from_run(ScenarioId::S1, 3, 40, 20);
    const WindowMarkers wm = compute_window_markers(seg, marker_set_full());
    REQUIRE(wm.values.size() == 20);
    for (int i = 0; i < 20; ++i)
        for (std::size_t s = 0; s < wm.marker_ids.size(); ++s) {
            CHECK(wm.available[i][s]);
            CHECK(std::isfinite(wm.values[i][s]));
        }
}

TEST_CASE("markers are invariant under rigid motion except heading mean") {
    const Segment seg = window_from_run(ScenarioId::S2, 5, 30, 24);
    const Segment moved = rigid_motion(seg, 1.1, {37.0, -12.0});
    const auto ids = marker_set_full();
    const WindowMarkers a = compute_window_markers(seg, ids);
    const WindowMarkers b = compute_window_markers(moved, ids);
    for (int i = 0; i < seg.n_sheep; ++i) {
        for (std::size_t s = 0; s < ids.size(); ++s) {
            if (ids[s] == 5) continue;  // frame-dependent by construction
            CHECK(a.values[i][s] == Catch::Approx(b.values[i][s]).margin(1e-9));
        }
    }
}

TEST_CASE("short windows mask the lagged estimators but keep spatial markers") {
    const Segment seg = window_from_run(ScenarioId::S5, 2, 10, 3);
    const WindowMarkers wm = compute_window_markers(seg, marker_set_full());
    const auto slot = [&](int id) {
        return static_cast<std::size_t>(
            std::find(wm.marker_ids.begin(), wm.marker_ids.end(), id) - wm.marker_ids.begin());
    };
    CHECK(wm.available[0][slot(1)]);    // kinematics need 3 ticks
    CHECK(wm.available[0][slot(7)]);    // SA defined per tick
    CHECK(wm.available[0][slot(42)]);   // one symbol is enough for an entropy
    CHECK_FALSE(wm.available[0][slot(15)]);  // lagged estimators need 4
    CHECK_FALSE(wm.available[0][slot(23)]);
    CHECK_FALSE(wm.available[0][slot(37)]);  // divergence tracking needs 8
    CHECK(std::isnan(wm.values[0][slot(23)]));
}

TEST_CASE("stationary swarm yields zero speed markers") {
    Segment seg;
    seg.n_sheep = 3;
    for (int t = 0; t < 20; ++t)
        seg.positions.push_back({{0, 0}, {5, 0}, {0, 5}, {9, 9}});
    const std::vector<int> ids{1, 2, 3, 4, 13};
    const WindowMarkers wm = compute_window_markers(seg, ids);
    for (int i = 0; i < 3; ++i)
        for (std::size_t s = 0; s < ids.size(); ++s) CHECK(wm.values[i][s] == 0.0);
}

TEST_CASE("TE-family markers obey their pairwise identities") {
    const Segment seg = window_from_run(ScenarioId::S3, 7, 50, 40);
    const std::vector<int> ids{23, 27, 29, 30, 31, 32, 33, 34, 35, 36};
    const WindowMarkers wm = compute_window_markers(seg, ids);
    const auto slot = [&](int id) {
        return static_cast<std::size_t>(
            std::find(ids.begin(), ids.end(), id) - ids.begin());
    };
    for (int i = 0; i < seg.n_sheep; ++i) {
        // External net is the negation of the sheep-as-source net.
        CHECK(wm.values[i][slot(30)] == Catch::Approx(-wm.values[i][slot(23)]).margin(1e-12));
        // Total vs the shepherd bounds the net.
        CHECK(wm.values[i][slot(27)] >= std::abs(wm.values[i][slot(23)]) - 1e-12);
        // Aggregate influence equals mean incoming + outgoing flow times partners.
        const double partners = static_cast<double>(seg.n_agents() - 1);
        const double flows =
            (wm.values[i][slot(33)] + wm.values[i][slot(35)]) * partners;
        CHECK(wm.values[i][slot(31)] == Catch::Approx(flows).margin(1e-9));
        // Net source is the summed outgoing flow.
        CHECK(wm.values[i][slot(32)] ==
              Catch::Approx(wm.values[i][slot(35)] * partners).margin(1e-9));
    }
}
