#include <catch2/catch_amalgamated.hpp>

#include "swarm/sim.hpp"
#include "swarm/windowing.hpp"

using namespace swarm;

TEST_CASE("window plans and strides") {
    CHECK(WindowPlan{20, 0.75}.stride() == 5);
    CHECK(WindowPlan{20, 0.50}.stride() == 10);
    CHECK(WindowPlan{20, 0.25}.stride() == 15);
    CHECK(WindowPlan{100, 0.75}.stride() == 25);
    CHECK(canonical_plans().size() == 15);
}

TEST_CASE("window counts match the range formula") {
    const auto w1 = make_windows(100, {20, 0.75});
    CHECK(w1.size() == 17);
    CHECK(w1.front() == std::pair<long, long>{0, 20});
    CHECK(w1.back() == std::pair<long, long>{80, 100});

    const auto w2 = make_windows(100, {20, 0.50});
    CHECK(w2.size() == 9);

    CHECK_THROWS_AS(make_windows(19, WindowPlan{20, 0.50}), WindowError);
}

TEST_CASE("consecutive windows overlap by size minus stride") {
    for (const WindowPlan& plan : canonical_plans()) {
        const auto windows = make_windows(400, plan);
        for (std::size_t j = 1; j < windows.size(); ++j) {
            CHECK(windows[j].first - windows[j - 1].first == plan.stride());
            const long shared = windows[j - 1].second - windows[j].first;
            CHECK(shared == plan.size - plan.stride());
        }
    }
}

TEST_CASE("marker matrix covers every window and sheep deterministically") {
    ScenarioSpec spec = canonical_scenario(ScenarioId::S1);
    spec.max_ticks = 120;
    spec.goal_radius = 0.0;
    const Trajectory traj = run_scenario(spec, 9);
    const WindowPlan plan{20, 0.75};
    const MarkerMatrix a = compute_marker_matrix(traj, plan, {1, 3, 17});
    const MarkerMatrix b = compute_marker_matrix(traj, plan, {1, 3, 17});
    CHECK(a.n_windows() == static_cast<int>(make_windows(traj.n_ticks(), plan).size()));
    CHECK(a.n_sheep() == 20);
    for (int w = 0; w < a.n_windows(); ++w)
        for (int i = 0; i < a.n_sheep(); ++i)
            for (int s = 0; s < a.n_markers(); ++s)
                CHECK(a.windows[w].values[i][s] == b.windows[w].values[i][s]);
    CHECK(a.total_time_s > 0.0);
}

TEST_CASE("z-score normalizes each window-marker column") {
    ScenarioSpec spec = canonical_scenario(ScenarioId::S2);
    spec.max_ticks = 60;
    spec.goal_radius = 0.0;
    const Trajectory traj = run_scenario(spec, 4);
    const MarkerMatrix m = compute_marker_matrix(traj, {20, 0.5}, {1, 3, 17, 19});
    const MarkerMatrix z = zscore_normalize(m);
    for (int w = 0; w < z.n_windows(); ++w) {
        for (int s = 0; s < z.n_markers(); ++s) {
            if (z.degenerate_columns[w][s]) continue;
            std::vector<double> col;
            for (int i = 0; i < z.n_sheep(); ++i) col.push_back(z.windows[w].values[i][s]);
            CHECK(std::abs(mean(col)) < 1e-9);
            CHECK(std::abs(stddev(col) - 1.0) < 1e-9);
        }
    }
    // Idempotence within tolerance.
    const MarkerMatrix zz = zscore_normalize(z);
    for (int w = 0; w < z.n_windows(); ++w)
        for (int i = 0; i < z.n_sheep(); ++i)
            for (int s = 0; s < z.n_markers(); ++s)
                if (!z.degenerate_columns[w][s])
                    CHECK(zz.windows[w].values[i][s] ==
                          Catch::Approx(z.windows[w].values[i][s]).margin(1e-12));
}

TEST_CASE("z-score direct column evaluation") {
    // Hand-built matrix with one marker and three agents valued 1, 2, 3.
    MarkerMatrix m;
    m.marker_ids = {1};
    m.plan = {20, 0.75};
    m.profile_labels = {ProfileId::A7, ProfileId::A7, ProfileId::A7};
    WindowMarkers wm;
    wm.marker_ids = {1};
    wm.values = {{1.0}, {2.0}, {3.0}};
    wm.available = {{true}, {true}, {true}};
    m.windows.push_back(wm);
    m.window_ranges.push_back({0, 20});

    const MarkerMatrix z = zscore_normalize(m);
    const double expected = std::sqrt(3.0 / 2.0);  // population std of {1,2,3} is sqrt(2/3)
    CHECK(z.windows[0].values[0][0] == Catch::Approx(-expected).epsilon(1e-9));
    CHECK(z.windows[0].values[1][0] == Catch::Approx(0.0).margin(1e-12));
    CHECK(z.windows[0].values[2][0] == Catch::Approx(expected).epsilon(1e-9));

    // Constant column flags as degenerate and zeroes out.
    m.windows[0].values = {{4.0}, {4.0}, {4.0}};
    const MarkerMatrix zc = zscore_normalize(m);
    CHECK(zc.degenerate_columns[0][0]);
    for (int i = 0; i < 3; ++i) CHECK(zc.windows[0].values[i][0] == 0.0);
}
