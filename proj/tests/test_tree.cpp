#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numeric>

#include "swarm/rng.hpp"
#include "swarm/train.hpp"
#include "swarm/tree.hpp"

using namespace swarm;

namespace {

LabeledDataset toy_dataset(int n_per_class, int n_classes, double spread, std::uint64_t seed,
                           int n_features = 4) {
    LabeledDataset ds;
    for (int f = 0; f < n_features; ++f) ds.marker_ids.push_back(f + 1);
    Rng rng(seed);
    std::vector<std::pair<std::vector<double>, int>> rows;
    for (int c = 0; c < n_classes; ++c) {
        for (int i = 0; i < n_per_class; ++i) {
            std::vector<double> x(n_features);
            for (int f = 0; f < n_features; ++f)
                x[f] = 3.0 * c * (f == c % n_features ? 1.0 : 0.2) + rng.uniform(-spread, spread);
            rows.push_back({x, c});
        }
    }
    rng.shuffle(rows);
    const std::size_t n_test = rows.size() / 5;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        ds.features.push_back(rows[r].first);
        ds.agent_label.push_back(rows[r].second);
        ds.swarm11.push_back(0);
        ds.swarm2.push_back(0);
        ds.meta.push_back({});
        ds.is_test.push_back(r < n_test ? 1 : 0);
    }
    return ds;
}

std::vector<std::int32_t> all_rows(std::size_t n) {
    std::vector<std::int32_t> rows(n);
    std::iota(rows.begin(), rows.end(), 0);
    return rows;
}

}  // namespace

TEST_CASE("tree separates a linearly separable toy set perfectly") {
    const LabeledDataset ds = toy_dataset(60, 2, 0.4, 1);
    const TrainResult r = train_tree(ds, LabelKind::Agent, {5, 8, 3});
    CHECK(r.test_accuracy == 1.0);
    CHECK(r.cv_accuracy > 0.95);
}

TEST_CASE("permuted labels collapse accuracy to chance") {
    LabeledDataset ds = toy_dataset(80, 4, 0.4, 2);
    Rng rng(3);
    rng.shuffle(ds.agent_label);
    const TrainResult r = train_tree(ds, LabelKind::Agent, {5, 10, 4});
    // Chance is 0.25; allow 3 binomial sigmas on the test split.
    const double n_test = std::count(ds.is_test.begin(), ds.is_test.end(), 1);
    const double sigma = std::sqrt(0.25 * 0.75 / n_test);
    CHECK(r.test_accuracy < 0.25 + 3.0 * sigma + 0.05);
}

TEST_CASE("fit_tree respects min_leaf and yields nonempty leaves") {
    const LabeledDataset ds = toy_dataset(50, 3, 1.5, 4);
    const TreeModel tree = fit_tree(ds.features, ds.agent_label, all_rows(ds.n_rows()), 3, 10, 7);
    long leaves = 0;
    for (const TreeNode& n : tree.nodes) {
        if (n.feature >= 0) continue;
        ++leaves;
        REQUIRE_FALSE(n.class_dist.empty());
        double total = 0.0;
        for (double p : n.class_dist) total += p;
        CHECK(total == Catch::Approx(1.0));
    }
    CHECK(leaves >= 3);
}

TEST_CASE("thresholds lie strictly between observed feature values") {
    const LabeledDataset ds = toy_dataset(40, 3, 1.0, 5);
    const TreeModel tree = fit_tree(ds.features, ds.agent_label, all_rows(ds.n_rows()), 3, 8, 2);
    for (const TreeNode& n : tree.nodes) {
        if (n.feature < 0) continue;
        bool below = false, above = false;
        for (const auto& row : ds.features) {
            if (row[n.feature] < n.threshold) below = true;
            if (row[n.feature] > n.threshold) above = true;
        }
        CHECK(below);
        CHECK(above);
    }
}

TEST_CASE("prediction is invariant under cubing all features") {
    const LabeledDataset ds = toy_dataset(60, 3, 1.2, 6);
    LabeledDataset cubed = ds;
    for (auto& row : cubed.features)
        for (double& v : row) v = v * v * v;

    const TreeModel a = fit_tree(ds.features, ds.agent_label, all_rows(ds.n_rows()), 3, 10, 2);
    const TreeModel b =
        fit_tree(cubed.features, cubed.agent_label, all_rows(cubed.n_rows()), 3, 10, 2);
    for (std::size_t r = 0; r < ds.n_rows(); ++r)
        CHECK(a.predict(ds.features[r]) == b.predict(cubed.features[r]));
}

TEST_CASE("training is bit-reproducible given data and seed") {
    const LabeledDataset ds = toy_dataset(50, 3, 1.3, 7);
    const TrainConfig cfg{6, 10, 42};
    const TrainResult a = train_tree(ds, LabelKind::Agent, cfg);
    const TrainResult b = train_tree(ds, LabelKind::Agent, cfg);
    CHECK(a.cv_accuracy == b.cv_accuracy);
    CHECK(a.test_accuracy == b.test_accuracy);
    CHECK(a.best_max_depth == b.best_max_depth);
    CHECK(a.best_min_leaf == b.best_min_leaf);
    CHECK(a.model.nodes.size() == b.model.nodes.size());
}

TEST_CASE("single-class data raises a degenerate-model error") {
    LabeledDataset ds = toy_dataset(30, 2, 0.5, 8);
    std::fill(ds.agent_label.begin(), ds.agent_label.end(), 0);
    CHECK_THROWS_AS(train_tree(ds, LabelKind::Agent, {5, 5, 1}), DegenerateModelError);
}

TEST_CASE("model JSON round-trip preserves predictions") {
    const LabeledDataset ds = toy_dataset(40, 3, 1.0, 9);
    const TreeModel tree = fit_tree(ds.features, ds.agent_label, all_rows(ds.n_rows()), 3, 9, 2);
    const TreeModel back = TreeModel::from_json(tree.to_json());
    for (const auto& row : ds.features) CHECK(tree.predict(row) == back.predict(row));
}

TEST_CASE("macro F1 and accuracy metrics") {
    const std::vector<int> truth{0, 0, 1, 1, 2, 2};
    const std::vector<int> pred{0, 1, 1, 1, 2, 0};
    CHECK(accuracy(truth, pred) == Catch::Approx(4.0 / 6.0));
    // Per class F1: c0 p=1/2 r=1/2 f=1/2; c1 p=2/3 r=1 f=4/5; c2 p=1 r=1/2 f=2/3.
    CHECK(macro_f1(truth, pred, 3) == Catch::Approx((0.5 + 0.8 + 2.0 / 3.0) / 3.0));
}
