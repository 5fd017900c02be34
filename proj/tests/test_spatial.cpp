#include <catch2/catch_amalgamated.hpp>

#include "swarm/spatial.hpp"

using namespace swarm;

TEST_CASE("situation awareness is 1 with a clear line of sight") {
    SpatialContext ctx;
    ctx.d_pi_beta = 12.0;
    ctx.d_pi_gcm = 3.0;
    ctx.d_gcm_beta = 9.0;
    ctx.theta = 0;
    CHECK(situation_awareness(ctx) == 1.0);
}

TEST_CASE("situation awareness matches the direct evaluation") {
    SpatialContext ctx;
    ctx.d_pi_beta = 2.0;
    ctx.d_pi_gcm = 1.0;
    ctx.d_gcm_beta = 4.0;
    ctx.theta = 1;
    CHECK(situation_awareness(ctx) == Catch::Approx(0.5));
}

TEST_CASE("situation awareness decreases monotonically with obstructions") {
    SpatialContext ctx;
    ctx.d_pi_beta = 5.0;
    ctx.d_pi_gcm = 2.0;
    ctx.d_gcm_beta = 7.0;
    double prev = 2.0;
    for (int theta = 0; theta < 50; ++theta) {
        ctx.theta = theta;
        const double sa = situation_awareness(ctx);
        CHECK(sa > 0.0);
        CHECK(sa <= 1.0);
        CHECK(sa < prev);
        prev = sa;
    }
    ctx.theta = 100000;
    CHECK(situation_awareness(ctx) < 1e-3);
}

TEST_CASE("situation awareness zero-distance convention") {
    SpatialContext ctx;  // agent at the centre of mass
    ctx.d_pi_beta = 5.0;
    ctx.d_pi_gcm = 0.0;
    ctx.d_gcm_beta = 5.0;
    ctx.theta = 0;
    CHECK(situation_awareness(ctx) == 1.0);
    ctx.theta = 2;
    CHECK(situation_awareness(ctx) == 0.0);
}

TEST_CASE("line of sight counts only corridor sheep") {
    // Sheep 0 at origin, shepherd (index 2) at (10, 0).
    std::vector<Vec2> pos = {{0, 0}, {5, 0}, {10, 0}};
    CHECK(line_of_sight_obstructions(pos, 0, 2, 1.0) == 1);  // on the midpoint

    pos[1] = {5, 2.0};  // displaced past the corridor half-width
    CHECK(line_of_sight_obstructions(pos, 0, 2, 1.0) == 0);

    pos[1] = {5, 1.0};  // exactly on the corridor edge
    CHECK(line_of_sight_obstructions(pos, 0, 2, 1.0) == 1);

    pos[1] = {-3, 0};  // behind the sheep, outside the open segment
    CHECK(line_of_sight_obstructions(pos, 0, 2, 1.0) == 0);

    const std::vector<Vec2> lone = {{0, 0}, {10, 0}};
    CHECK(line_of_sight_obstructions(lone, 0, 1, 1.0) == 0);
}

TEST_CASE("predation risk follows the bin and crowding formula") {
    CHECK(predation_bins(20) == 5);
    SpatialContext ctx;
    ctx.bin_order = 1;
    ctx.omega_pipi = 0;
    CHECK(predation_risk(ctx, 20) == Catch::Approx(20.0));
    ctx.bin_order = 5;
    ctx.omega_pipi = 3;
    CHECK(predation_risk(ctx, 20) == Catch::Approx(1.0));
}

TEST_CASE("predation risk decreases in bin order and crowding") {
    SpatialContext ctx;
    for (int bin = 1; bin < 5; ++bin) {
        ctx.bin_order = bin;
        ctx.omega_pipi = 2;
        const double here = predation_risk(ctx, 20);
        ctx.bin_order = bin + 1;
        CHECK(predation_risk(ctx, 20) < here);
        ctx.bin_order = bin;
        ctx.omega_pipi = 3;
        CHECK(predation_risk(ctx, 20) < here);
        ctx.omega_pipi = 2;
    }
}

TEST_CASE("spatial contexts rank agents into uniform shepherd-distance bins") {
    std::vector<Vec2> pos;
    for (int i = 0; i < 20; ++i) pos.push_back({static_cast<double>(i), 0.0});
    pos.push_back({-5.0, 0.0});  // shepherd closest to agent 0
    const auto ctxs = spatial_contexts_at_tick(pos, 20, 2.0, 6.0);
    CHECK(ctxs[0].bin_order == 1);
    CHECK(ctxs[19].bin_order == 5);
    CHECK(ctxs[0].n_bins == 5);
    int per_bin[6] = {0, 0, 0, 0, 0, 0};
    for (const auto& c : ctxs) ++per_bin[c.bin_order];
    for (int b = 1; b <= 5; ++b) CHECK(per_bin[b] == 4);
    // Crowding: agent 0 has neighbours at distance 1..6 within radius 6.
    CHECK(ctxs[0].omega_pipi == 6);
}
