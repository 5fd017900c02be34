#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "swarm/kinematics.hpp"
#include "swarm/rng.hpp"

using namespace swarm;

namespace {

// Lone-agent segment with the shepherd parked far away.
Segment make_segment(const std::vector<Vec2>& agent_path, Vec2 shepherd = {1000, 1000}) {
    Segment seg;
    seg.n_sheep = 1;
    seg.dt = 1.0;
    for (const Vec2& p : agent_path) seg.positions.push_back({p, shepherd});
    return seg;
}

}  // namespace

TEST_CASE("stationary agent has zero kinematics") {
    const Segment seg = make_segment(std::vector<Vec2>(10, Vec2{3, 4}));
    const KinematicStats k = kinematic_stats(seg, 0);
    CHECK(k.segment_speed == 0.0);
    CHECK(k.path_rate == 0.0);
    CHECK(k.speed_mean == 0.0);
    CHECK(k.speed_var == 0.0);
    CHECK(k.turn_rate == 0.0);
}

TEST_CASE("straight unit-step path") {
    std::vector<Vec2> path;
    for (int t = 0; t < 10; ++t) path.push_back({static_cast<double>(t), 0.0});
    const Segment seg = make_segment(path);
    const KinematicStats k = kinematic_stats(seg, 0);
    CHECK(k.speed_mean == Catch::Approx(1.0));
    CHECK(k.speed_var == Catch::Approx(0.0).margin(1e-15));
    CHECK(k.heading_var == Catch::Approx(0.0).margin(1e-12));
    CHECK(k.segment_speed == Catch::Approx(k.path_rate));
    CHECK(k.segment_speed == Catch::Approx(1.0));
    CHECK(k.heading_mean == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("unit square path: turn rate and path rate") {
    // 4 unit steps with 90 degree left turns, back to the start.
    const std::vector<Vec2> path = {{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0, 0}};
    const Segment seg = make_segment(path);
    const KinematicStats k = kinematic_stats(seg, 0);

    // Independent per-step oracle for both quantities.
    double oracle_path = 0.0;
    for (std::size_t t = 0; t + 1 < path.size(); ++t)
        oracle_path += distance(path[t + 1], path[t]);
    const double elapsed = static_cast<double>(path.size() - 1);
    CHECK(k.path_rate == Catch::Approx(oracle_path / elapsed));
    CHECK(k.path_rate == Catch::Approx(4.0 / 4.0));

    std::vector<double> turn_oracle;
    for (std::size_t t = 0; t + 2 < path.size(); ++t) {
        const Vec2 d0 = path[t + 1] - path[t];
        const Vec2 d1 = path[t + 2] - path[t + 1];
        turn_oracle.push_back(wrap_angle(std::atan2(d1.y, d1.x) - std::atan2(d0.y, d0.x)));
    }
    CHECK(k.turn_rate == Catch::Approx(mean(turn_oracle)));
    CHECK(k.turn_rate == Catch::Approx(std::numbers::pi / 2.0));
    CHECK(k.segment_speed == 0.0);  // closed loop
}

TEST_CASE("shepherd distance statistics") {
    std::vector<Vec2> path = {{0, 0}, {1, 0}, {2, 0}, {3, 0}};
    Segment seg;
    seg.n_sheep = 1;
    for (const Vec2& p : path) seg.positions.push_back({p, Vec2{5, 0}});
    const KinematicStats k = kinematic_stats(seg, 0);
    CHECK(k.shepherd_dist_mean == Catch::Approx((5 + 4 + 3 + 2) / 4.0));
    CHECK(k.shepherd_dist_max == 5.0);
    CHECK(k.shepherd_dist_min == 2.0);
    CHECK(k.shepherd_dist_var == Catch::Approx(variance(std::vector<double>{5, 4, 3, 2})));
}

TEST_CASE("window too small raises a window error") {
    const Segment seg = make_segment({{0, 0}, {1, 0}});
    CHECK_THROWS_AS(kinematic_stats(seg, 0), WindowError);
    CHECK_THROWS_AS(dba_stats(seg, 0), WindowError);
}

TEST_CASE("constant velocity has zero body acceleration") {
    std::vector<Vec2> path;
    for (int t = 0; t < 8; ++t) path.push_back({2.0 * t, -1.0 * t});
    const Segment seg = make_segment(path);
    const DbaStats d = dba_stats(seg, 0);
    CHECK(d.dba_mean == Catch::Approx(0.0).margin(1e-12));
    CHECK(d.dba_var == Catch::Approx(0.0).margin(1e-12));
    CHECK(d.odba == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("single unit acceleration over five ticks") {
    // Velocity switches from 0 to 1 at the second step: one unit second
    // difference among the three interior ticks.
    const std::vector<Vec2> path = {{0, 0}, {0, 0}, {1, 0}, {2, 0}, {3, 0}};
    const Segment seg = make_segment(path);
    const DbaStats d = dba_stats(seg, 0);
    CHECK(d.odba == Catch::Approx(1.0));
    CHECK(d.dba_mean == Catch::Approx(1.0 / 3.0));
}

TEST_CASE("odba grows monotonically with the window") {
    Rng rng(5);
    std::vector<Vec2> path{{0, 0}};
    for (int t = 0; t < 30; ++t)
        path.push_back(path.back() + Vec2{rng.uniform(-1, 1), rng.uniform(-1, 1)});
    double prev = 0.0;
    for (int k = 3; k <= 30; ++k) {
        const Segment seg = make_segment({path.begin(), path.begin() + k});
        const double odba = dba_stats(seg, 0).odba;
        CHECK(odba >= prev - 1e-12);
        prev = odba;
    }
}

TEST_CASE("cross correlation basics") {
    std::vector<double> x;
    Rng rng(3);
    for (int i = 0; i < 40; ++i) x.push_back(rng.uniform(0.0, 2.0));
    std::vector<double> neg(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) neg[i] = -x[i];
    CHECK(cross_correlation_at_lag(x, x, 0) == Catch::Approx(1.0));
    CHECK(cross_correlation_at_lag(x, neg, 0) == Catch::Approx(-1.0));

    // A shifted copy peaks at the shift lag.
    const int shift = 3;
    std::vector<double> y(x.size(), 0.0);
    for (std::size_t i = shift; i < x.size(); ++i) y[i] = x[i - shift];
    int best_lag = -5;
    double best = -2.0;
    for (int lag = -5; lag <= 5; ++lag) {
        const double c = cross_correlation_at_lag(x, y, lag);
        if (c > best) { best = c; best_lag = lag; }
    }
    CHECK(best_lag == shift);
    CHECK(best > 0.95);
}

TEST_CASE("zero-variance series correlate as zero") {
    const std::vector<double> flat(20, 1.0);
    std::vector<double> x;
    Rng rng(4);
    for (int i = 0; i < 20; ++i) x.push_back(rng.uniform(0.0, 1.0));
    CHECK(cross_correlation_at_lag(flat, x, 0) == 0.0);
}

TEST_CASE("agent-vs-shepherd cross correlation markers") {
    Segment seg;
    seg.n_sheep = 1;
    Rng rng(9);
    Vec2 a{0, 0}, b{10, 10};
    for (int t = 0; t < 20; ++t) {
        seg.positions.push_back({a, b});
        a += Vec2{rng.uniform(0.0, 1.0), 0.0};
        b += Vec2{rng.uniform(0.0, 1.0), 0.0};
    }
    const CrossCorrelationStats xc = cross_correlation_stats(seg, 0);
    CHECK(xc.per_lag.size() == 2 * (20 / 4) + 1);
    CHECK(xc.xcorr_mean == Catch::Approx(mean(xc.per_lag)));
}
