#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>

#include "swarm/dataset.hpp"
#include "swarm/sim.hpp"

using namespace swarm;

namespace {

std::vector<MarkerMatrix> small_matrices(const std::vector<ScenarioId>& scenarios, int seeds,
                                         long ticks = 80) {
    std::vector<MarkerMatrix> out;
    for (ScenarioId id : scenarios) {
        for (int seed = 1; seed <= seeds; ++seed) {
            ScenarioSpec spec = canonical_scenario(id);
            spec.max_ticks = ticks;
            spec.goal_radius = 0.0;
            const Trajectory traj = run_scenario(spec, seed);
            out.push_back(compute_marker_matrix(traj, {20, 0.75}, {1, 3, 17}));
        }
    }
    return out;
}

}  // namespace

TEST_CASE("dataset rows, labels and split proportions") {
    const auto matrices = small_matrices({ScenarioId::S1, ScenarioId::S5}, 2);
    const LabeledDataset ds = build_labeled_dataset(matrices, 7);

    std::size_t expected_rows = 0;
    for (const auto& m : matrices) expected_rows += m.n_windows() * m.n_sheep();
    CHECK(ds.n_rows() == expected_rows);

    std::size_t n_test = 0;
    for (char t : ds.is_test) n_test += t;
    const double frac = static_cast<double>(n_test) / ds.n_rows();
    CHECK(frac == Catch::Approx(0.2).margin(0.03));

    for (std::size_t r = 0; r < ds.n_rows(); ++r) {
        if (ds.swarm11[r] == static_cast<int>(ScenarioId::S5)) {
            CHECK(ds.agent_label[r] == static_cast<int>(ProfileId::A7));
            CHECK(ds.swarm2[r] == 0);
        }
        if (ds.swarm11[r] == static_cast<int>(ScenarioId::S1)) CHECK(ds.swarm2[r] == 1);
    }
}

TEST_CASE("no window group leaks across the split") {
    const auto matrices = small_matrices({ScenarioId::S2, ScenarioId::S3}, 2);
    const LabeledDataset ds = build_labeled_dataset(matrices, 3);
    std::map<std::tuple<int, std::uint64_t, long>, std::set<char>> sides;
    for (std::size_t r = 0; r < ds.n_rows(); ++r)
        sides[{static_cast<int>(ds.meta[r].scenario), ds.meta[r].seed,
               ds.meta[r].window_index}]
            .insert(ds.is_test[r]);
    for (const auto& [key, side_set] : sides) CHECK(side_set.size() == 1);
}

TEST_CASE("agent-label representation is consistent across the split") {
    const auto matrices = small_matrices({ScenarioId::S1}, 4);
    const LabeledDataset ds = build_labeled_dataset(matrices, 5);
    std::map<int, double> train_counts, test_counts;
    double n_train = 0, n_test = 0;
    for (std::size_t r = 0; r < ds.n_rows(); ++r) {
        if (ds.is_test[r]) { ++test_counts[ds.agent_label[r]]; ++n_test; }
        else { ++train_counts[ds.agent_label[r]]; ++n_train; }
    }
    for (const auto& [label, count] : train_counts) {
        const double p_train = count / n_train;
        const double p_test = test_counts[label] / n_test;
        CHECK(p_train == Catch::Approx(p_test).margin(0.02));
    }
}

TEST_CASE("same shuffle seed reproduces the split exactly") {
    const auto matrices = small_matrices({ScenarioId::S4}, 2);
    const LabeledDataset a = build_labeled_dataset(matrices, 11);
    const LabeledDataset b = build_labeled_dataset(matrices, 11);
    REQUIRE(a.n_rows() == b.n_rows());
    for (std::size_t r = 0; r < a.n_rows(); ++r) {
        CHECK(a.is_test[r] == b.is_test[r]);
        CHECK(a.meta[r].window_index == b.meta[r].window_index);
        CHECK(a.meta[r].agent_id == b.meta[r].agent_id);
    }
}

TEST_CASE("mixed marker sets are rejected") {
    auto matrices = small_matrices({ScenarioId::S5}, 1);
    auto other = small_matrices({ScenarioId::S5}, 1);
    other[0].marker_ids = {1, 3};
    std::vector<MarkerMatrix> mixed{matrices[0], other[0]};
    CHECK_THROWS_AS(build_labeled_dataset(mixed, 1), SchemaError);
}

TEST_CASE("scenario-plan enumeration covers 165 variations") {
    int variations = 0;
    for (int s = 0; s < kNumScenarios; ++s)
        for (const WindowPlan& plan : canonical_plans()) {
            (void)plan;
            ++variations;
        }
    CHECK(variations == 165);
}

TEST_CASE("select_markers projects feature columns") {
    const auto matrices = small_matrices({ScenarioId::S5}, 1);
    const LabeledDataset ds = build_labeled_dataset(matrices, 1);
    const LabeledDataset sub = select_markers(ds, {17, 1});
    REQUIRE(sub.marker_ids == std::vector<int>{17, 1});
    for (std::size_t r = 0; r < ds.n_rows(); ++r) {
        CHECK(sub.features[r][0] == ds.features[r][2]);
        CHECK(sub.features[r][1] == ds.features[r][0]);
    }
    CHECK_THROWS_AS(select_markers(ds, {42}), SchemaError);
}

TEST_CASE("feature csv carries the schema header and one row per window-agent") {
    const auto matrices = small_matrices({ScenarioId::S5}, 1);
    const std::string csv = marker_matrix_to_csv(matrices[0]);
    std::vector<std::string> lines;
    std::stringstream ss(csv);
    std::string line;
    while (std::getline(ss, line)) lines.push_back(line);
    CHECK(lines[0] == "scenario,seed,window_index,agent_id,agent_label,swarm_label,M1,M3,M17");
    CHECK(lines.size() ==
          1 + static_cast<std::size_t>(matrices[0].n_windows() * matrices[0].n_sheep()));
}
