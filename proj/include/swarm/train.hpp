#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "swarm/dataset.hpp"
#include "swarm/rng.hpp"
#include "swarm/tree.hpp"

namespace swarm {

inline double accuracy(std::span<const int> truth, std::span<const int> predicted) {
    if (truth.empty()) return 0.0;
    std::size_t hits = 0;
    for (std::size_t i = 0; i < truth.size(); ++i)
        if (truth[i] == predicted[i]) ++hits;
    return static_cast<double>(hits) / static_cast<double>(truth.size());
}

// Macro-averaged F1 over classes present in the truth labels.
inline double macro_f1(std::span<const int> truth, std::span<const int> predicted, int n_classes) {
    std::vector<double> tp(n_classes, 0.0), fp(n_classes, 0.0), fn(n_classes, 0.0);
    std::vector<bool> present(n_classes, false);
    for (std::size_t i = 0; i < truth.size(); ++i) {
        present[truth[i]] = true;
        if (truth[i] == predicted[i]) tp[truth[i]] += 1.0;
        else {
            fp[predicted[i]] += 1.0;
            fn[truth[i]] += 1.0;
        }
    }
    double sum = 0.0;
    int count = 0;
    for (int c = 0; c < n_classes; ++c) {
        if (!present[c]) continue;
        const double denom = 2.0 * tp[c] + fp[c] + fn[c];
        sum += denom > 0.0 ? 2.0 * tp[c] / denom : 0.0;
        ++count;
    }
    return count > 0 ? sum / count : 0.0;
}

struct TrainConfig {
    int folds = 10;
    int opt_budget = 30;
    std::uint64_t seed = 1;
    int max_depth_lo = 3, max_depth_hi = 24;
    int min_leaf_lo = 1, min_leaf_hi = 64;
};

struct TrainResult {
    TreeModel model;
    double cv_accuracy = 0.0;
    double test_accuracy = 0.0;
    double test_macro_f1 = 0.0;
    int best_max_depth = 0;
    int best_min_leaf = 0;
    std::string search_scheme = "tpe-seq";
    std::vector<int> test_truth;
    std::vector<int> test_predicted;
};

namespace detail {

struct Trial {
    int max_depth = 0;
    int min_leaf = 1;
    double score = 0.0;
};

// Sequential model-based sampler over (max_depth, min_leaf): after a random
// warm-up, candidates are drawn near the best quartile of past trials and
// ranked by a good/bad kernel-density ratio.
class TpeSampler {
public:
    TpeSampler(const TrainConfig& cfg, Rng& rng) : cfg_(cfg), rng_(rng) {}

    Trial propose(const std::vector<Trial>& history) {
        const int warmup = std::max(4, cfg_.opt_budget / 4);
        if (static_cast<int>(history.size()) < warmup) return random_trial();

        std::vector<Trial> sorted = history;
        std::stable_sort(sorted.begin(), sorted.end(),
                         [](const Trial& a, const Trial& b) { return a.score > b.score; });
        const std::size_t n_good = std::max<std::size_t>(1, sorted.size() / 4);

        Trial best;
        double best_ratio = -1.0;
        for (int c = 0; c < 16; ++c) {
            const Trial& anchor = sorted[rng_.uniform_index(n_good)];
            Trial cand;
            cand.max_depth = jitter(anchor.max_depth, cfg_.max_depth_lo, cfg_.max_depth_hi);
            cand.min_leaf = jitter_log(anchor.min_leaf, cfg_.min_leaf_lo, cfg_.min_leaf_hi);
            const double ratio = density(sorted, 0, n_good, cand) /
                                 (density(sorted, n_good, sorted.size(), cand) + 1e-9);
            if (ratio > best_ratio) { best_ratio = ratio; best = cand; }
        }
        return best;
    }

    Trial random_trial() {
        Trial t;
        t.max_depth = cfg_.max_depth_lo +
                      static_cast<int>(rng_.uniform_index(cfg_.max_depth_hi - cfg_.max_depth_lo + 1));
        const double lo = std::log(static_cast<double>(cfg_.min_leaf_lo));
        const double hi = std::log(static_cast<double>(cfg_.min_leaf_hi));
        t.min_leaf = static_cast<int>(std::lround(std::exp(rng_.uniform(lo, hi))));
        t.min_leaf = std::clamp(t.min_leaf, cfg_.min_leaf_lo, cfg_.min_leaf_hi);
        return t;
    }

private:
    int jitter(int v, int lo, int hi) {
        const int width = std::max(1, (hi - lo) / 8);
        const int delta = static_cast<int>(rng_.uniform_index(2 * width + 1)) - width;
        return std::clamp(v + delta, lo, hi);
    }

    int jitter_log(int v, int lo, int hi) {
        const double factor = std::exp(rng_.uniform(-0.6, 0.6));
        return std::clamp(static_cast<int>(std::lround(v * factor)), lo, hi);
    }

    static double density(const std::vector<Trial>& sorted, std::size_t begin, std::size_t end,
                          const Trial& cand) {
        if (begin >= end) return 1e-9;
        double d = 0.0;
        for (std::size_t i = begin; i < end; ++i) {
            const double dd = std::abs(sorted[i].max_depth - cand.max_depth) / 4.0;
            const double dl = std::log(static_cast<double>(std::max(1, sorted[i].min_leaf))) -
                              std::log(static_cast<double>(std::max(1, cand.min_leaf)));
            d += std::exp(-(dd * dd + dl * dl));
        }
        return d / static_cast<double>(end - begin);
    }

    const TrainConfig& cfg_;
    Rng& rng_;
};

}  // namespace detail

// Trains a CART with hyperparameters tuned by sequential search over
// `opt_budget` trials, each scored by k-fold cross-validation accuracy on the
// training split; the final model is refit on the full training split.
inline TrainResult train_tree(const LabeledDataset& ds, LabelKind target,
                              const TrainConfig& cfg = {}) {
    const std::vector<int>& labels = ds.labels(target);
    const int n_classes = ds.n_classes(target);

    std::vector<std::int32_t> train_rows, test_rows;
    for (std::size_t r = 0; r < ds.n_rows(); ++r)
        (ds.is_test[r] ? test_rows : train_rows).push_back(static_cast<std::int32_t>(r));

    std::vector<std::size_t> class_counts(n_classes, 0);
    for (std::int32_t r : train_rows) ++class_counts[labels[r]];
    const int populated =
        static_cast<int>(std::count_if(class_counts.begin(), class_counts.end(),
                                       [](std::size_t c) { return c > 0; }));
    if (populated < 2)
        throw DegenerateModelError("training data contains a single class");
    for (int c = 0; c < n_classes; ++c)
        if (class_counts[c] > 0 && class_counts[c] < static_cast<std::size_t>(cfg.folds))
            throw DegenerateModelError("class " + std::to_string(c) + " has fewer rows than folds");

    // Deterministic fold assignment.
    Rng rng(cfg.seed);
    std::vector<std::int32_t> shuffled = train_rows;
    rng.shuffle(shuffled);
    std::vector<int> fold_of(ds.n_rows(), -1);
    for (std::size_t i = 0; i < shuffled.size(); ++i)
        fold_of[shuffled[i]] = static_cast<int>(i % cfg.folds);

    std::vector<std::vector<std::int32_t>> fold_train(cfg.folds), fold_val(cfg.folds);
    for (std::int32_t r : train_rows)
        for (int f = 0; f < cfg.folds; ++f)
            (fold_of[r] == f ? fold_val[f] : fold_train[f]).push_back(r);

    const auto cv_score = [&](int max_depth, int min_leaf) {
        double sum = 0.0;
        for (int f = 0; f < cfg.folds; ++f) {
            const TreeModel tree =
                fit_tree(ds.features, labels, fold_train[f], n_classes, max_depth, min_leaf);
            std::vector<int> truth, pred;
            truth.reserve(fold_val[f].size());
            pred.reserve(fold_val[f].size());
            for (std::int32_t r : fold_val[f]) {
                truth.push_back(labels[r]);
                pred.push_back(tree.predict(ds.features[r]));
            }
            sum += accuracy(truth, pred);
        }
        return sum / cfg.folds;
    };

    detail::TpeSampler sampler(cfg, rng);
    std::vector<detail::Trial> history;
    detail::Trial best{cfg.max_depth_hi, cfg.min_leaf_lo, -1.0};
    for (int t = 0; t < cfg.opt_budget; ++t) {
        detail::Trial trial = sampler.propose(history);
        trial.score = cv_score(trial.max_depth, trial.min_leaf);
        history.push_back(trial);
        if (trial.score > best.score) best = trial;
    }

    TrainResult out;
    out.best_max_depth = best.max_depth;
    out.best_min_leaf = best.min_leaf;
    out.cv_accuracy = best.score;
    out.model = fit_tree(ds.features, labels, train_rows, n_classes, best.max_depth, best.min_leaf);
    for (std::int32_t r : test_rows) {
        out.test_truth.push_back(labels[r]);
        out.test_predicted.push_back(out.model.predict(ds.features[r]));
    }
    out.test_accuracy = accuracy(out.test_truth, out.test_predicted);
    out.test_macro_f1 = macro_f1(out.test_truth, out.test_predicted, n_classes);
    return out;
}

}  // namespace swarm
