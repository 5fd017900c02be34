#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "swarm/dataset.hpp"
#include "swarm/train.hpp"
#include "swarm/windowing.hpp"

namespace swarm {

// --- Mutual-information marker selection -----------------------------------

namespace detail {

// Equal-frequency discretization into n_bins by rank.
inline std::vector<int> equal_frequency_bins(const std::vector<std::vector<double>>& x,
                                             std::size_t col, int n_bins) {
    const std::size_t n = x.size();
    std::vector<std::int32_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::int32_t a, std::int32_t b) {
        const double va = x[a][col], vb = x[b][col];
        const bool na = std::isnan(va), nb = std::isnan(vb);
        if (na || nb) return nb && !na;
        return va < vb;
    });
    std::vector<int> bins(n, 0);
    for (std::size_t rank = 0; rank < n; ++rank)
        bins[order[rank]] = static_cast<int>(rank * n_bins / n);
    return bins;
}

inline double mi_binned(const std::vector<int>& xs, const std::vector<int>& ys, int ax, int ay) {
    std::vector<double> joint(static_cast<std::size_t>(ax) * ay, 0.0);
    std::vector<double> mx(ax, 0.0), my(ay, 0.0);
    const double n = static_cast<double>(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        joint[static_cast<std::size_t>(xs[i]) * ay + ys[i]] += 1.0;
        mx[xs[i]] += 1.0;
        my[ys[i]] += 1.0;
    }
    double mi = 0.0;
    for (int a = 0; a < ax; ++a)
        for (int b = 0; b < ay; ++b) {
            const double j = joint[static_cast<std::size_t>(a) * ay + b];
            if (j <= 0.0) continue;
            mi += (j / n) * std::log2(j * n / (mx[a] * my[b]));
        }
    return mi;
}

// I(X; Y | Z) from binned triples.
inline double cmi_binned(const std::vector<int>& xs, const std::vector<int>& ys,
                         const std::vector<int>& zs, int ax, int ay, int az) {
    std::vector<double> xyz(static_cast<std::size_t>(ax) * ay * az, 0.0);
    std::vector<double> xz(static_cast<std::size_t>(ax) * az, 0.0);
    std::vector<double> yz(static_cast<std::size_t>(ay) * az, 0.0);
    std::vector<double> z(az, 0.0);
    const double n = static_cast<double>(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        xyz[(static_cast<std::size_t>(xs[i]) * ay + ys[i]) * az + zs[i]] += 1.0;
        xz[static_cast<std::size_t>(xs[i]) * az + zs[i]] += 1.0;
        yz[static_cast<std::size_t>(ys[i]) * az + zs[i]] += 1.0;
        z[zs[i]] += 1.0;
    }
    double cmi = 0.0;
    for (int a = 0; a < ax; ++a)
        for (int b = 0; b < ay; ++b)
            for (int c = 0; c < az; ++c) {
                const double j = xyz[(static_cast<std::size_t>(a) * ay + b) * az + c];
                if (j <= 0.0) continue;
                cmi += (j / n) * std::log2(j * z[c] /
                                           (xz[static_cast<std::size_t>(a) * az + c] *
                                            yz[static_cast<std::size_t>(b) * az + c]));
            }
    return cmi;
}

}  // namespace detail

struct MiSelection {
    std::vector<int> selected;          // marker ids, greedy order
    std::vector<int> greedy_order;      // all marker ids in selection order
    std::vector<double> marginal_gain;  // aligned with greedy_order, bits
    double total_gain = 0.0;
};

// Greedy marker ranking by marginal label information: the first pick
// maximises I(marker; label); later picks maximise the running minimum of
// I(candidate; label | already-selected) so redundant copies score zero.
// Selection keeps the minimal greedy prefix covering `coverage` of the total.
inline MiSelection mi_select(const LabeledDataset& ds, LabelKind target, double coverage = 0.95,
                             int n_bins = 16) {
    const std::size_t n_markers = ds.marker_ids.size();
    const int n_classes = ds.n_classes(target);
    std::vector<int> label_bins(ds.labels(target).begin(), ds.labels(target).end());

    std::vector<std::vector<int>> feature_bins(n_markers);
    for (std::size_t f = 0; f < n_markers; ++f)
        feature_bins[f] = detail::equal_frequency_bins(ds.features, f, n_bins);

    std::vector<bool> used(n_markers, false);
    std::vector<double> running_gain(n_markers);
    for (std::size_t f = 0; f < n_markers; ++f)
        running_gain[f] = detail::mi_binned(feature_bins[f], label_bins, n_bins, n_classes);

    MiSelection out;
    for (std::size_t step = 0; step < n_markers; ++step) {
        std::size_t best = n_markers;
        for (std::size_t f = 0; f < n_markers; ++f) {
            if (used[f]) continue;
            if (best == n_markers || running_gain[f] > running_gain[best]) best = f;
        }
        used[best] = true;
        out.greedy_order.push_back(ds.marker_ids[best]);
        out.marginal_gain.push_back(std::max(0.0, running_gain[best]));
        out.total_gain += std::max(0.0, running_gain[best]);
        for (std::size_t f = 0; f < n_markers; ++f) {
            if (used[f]) continue;
            const double cmi = detail::cmi_binned(feature_bins[f], label_bins,
                                                  feature_bins[best], n_bins, n_classes, n_bins);
            running_gain[f] = std::min(running_gain[f], cmi);
        }
    }

    double cumulative = 0.0;
    for (std::size_t i = 0; i < out.greedy_order.size(); ++i) {
        if (cumulative >= coverage * out.total_gain && i > 0) break;
        out.selected.push_back(out.greedy_order[i]);
        cumulative += out.marginal_gain[i];
    }
    std::sort(out.selected.begin(), out.selected.end());
    return out;
}

// --- Ablation protocols -----------------------------------------------------

struct AblationRow {
    std::string set_name;
    std::vector<int> removed;
    double metric = 0.0;          // accuracy (E1) or macro F1 (E2), percent
    double percent_change = 0.0;  // relative change vs the baseline row
};

struct AblationReport {
    std::string metric_name;
    double baseline = 0.0;
    std::vector<AblationRow> rows;
};

namespace detail {

inline std::vector<int> set_difference_ids(const std::vector<int>& all,
                                           const std::vector<int>& removed) {
    std::vector<int> out;
    for (int id : all)
        if (std::find(removed.begin(), removed.end(), id) == removed.end()) out.push_back(id);
    return out;
}

inline double percent_change(double value, double baseline) {
    return baseline == 0.0 ? 0.0 : (value - baseline) / baseline * 100.0;
}

// Mean k-fold CV accuracy at fixed hyperparameters.
inline double cv_accuracy_fixed(const LabeledDataset& ds, LabelKind target, int folds,
                                std::uint64_t seed, int max_depth, int min_leaf) {
    const std::vector<int>& labels = ds.labels(target);
    const int n_classes = ds.n_classes(target);
    std::vector<std::int32_t> train_rows;
    for (std::size_t r = 0; r < ds.n_rows(); ++r)
        if (!ds.is_test[r]) train_rows.push_back(static_cast<std::int32_t>(r));
    Rng rng(seed);
    std::vector<std::int32_t> shuffled = train_rows;
    rng.shuffle(shuffled);
    std::vector<int> fold_of(ds.n_rows(), -1);
    for (std::size_t i = 0; i < shuffled.size(); ++i)
        fold_of[shuffled[i]] = static_cast<int>(i % folds);

    double sum = 0.0;
    for (int f = 0; f < folds; ++f) {
        std::vector<std::int32_t> tr, va;
        for (std::int32_t r : train_rows) (fold_of[r] == f ? va : tr).push_back(r);
        const TreeModel tree = fit_tree(ds.features, labels, tr, n_classes, max_depth, min_leaf);
        std::vector<int> truth, pred;
        for (std::int32_t r : va) {
            truth.push_back(labels[r]);
            pred.push_back(tree.predict(ds.features[r]));
        }
        sum += accuracy(truth, pred);
    }
    return sum / folds;
}

}  // namespace detail

struct AblationSets {
    std::vector<std::pair<std::string, std::vector<int>>> sets;
};

// Singletons plus the MI-bottom group (markers outside the 95% MI selection)
// and the centre-of-influence group.
inline AblationSets standard_ablation_sets(const std::vector<int>& marker_ids,
                                           const std::vector<int>& mi_selected) {
    AblationSets out;
    for (int id : marker_ids) out.sets.push_back({"{" + marker_name(id) + "}", {id}});
    std::vector<int> mi_bottom = detail::set_difference_ids(marker_ids, mi_selected);
    out.sets.push_back({"{MI 5%}", std::move(mi_bottom)});
    std::vector<int> coi;
    for (int id : {7, 8, 9, 10, 21, 22})
        if (std::find(marker_ids.begin(), marker_ids.end(), id) != marker_ids.end())
            coi.push_back(id);
    out.sets.push_back({"{COI}", std::move(coi)});
    return out;
}

// Protocol E1: retrain without each marker set, baseline hyperparameters kept
// fixed, scored by CV accuracy.
inline AblationReport ablate_retrain(const LabeledDataset& ds, LabelKind target,
                                     const TrainResult& baseline, const AblationSets& sets,
                                     int folds = 10, std::uint64_t seed = 1) {
    AblationReport report;
    report.metric_name = "accuracy";
    report.baseline = 100.0 * detail::cv_accuracy_fixed(ds, target, folds, seed,
                                                        baseline.best_max_depth,
                                                        baseline.best_min_leaf);
    for (const auto& [name, removed] : sets.sets) {
        const std::vector<int> keep = detail::set_difference_ids(ds.marker_ids, removed);
        const LabeledDataset reduced = select_markers(ds, keep);
        const double acc = 100.0 * detail::cv_accuracy_fixed(reduced, target, folds, seed,
                                                             baseline.best_max_depth,
                                                             baseline.best_min_leaf);
        report.rows.push_back({name, removed, acc, detail::percent_change(acc, report.baseline)});
    }
    return report;
}

// Protocol E2: keep the trained model, impute each marker set to its mean
// across all observations, and re-evaluate test macro F1.
inline AblationReport ablate_impute(const LabeledDataset& ds, LabelKind target,
                                    const TrainResult& model, const AblationSets& sets) {
    AblationReport report;
    report.metric_name = "f1";
    const std::vector<int>& labels = ds.labels(target);
    const int n_classes = ds.n_classes(target);

    std::vector<double> column_mean(ds.marker_ids.size(), 0.0);
    std::vector<double> column_n(ds.marker_ids.size(), 0.0);
    for (const auto& row : ds.features)
        for (std::size_t c = 0; c < row.size(); ++c)
            if (!std::isnan(row[c])) { column_mean[c] += row[c]; column_n[c] += 1.0; }
    for (std::size_t c = 0; c < column_mean.size(); ++c)
        if (column_n[c] > 0.0) column_mean[c] /= column_n[c];

    std::vector<std::int32_t> test_rows;
    for (std::size_t r = 0; r < ds.n_rows(); ++r)
        if (ds.is_test[r]) test_rows.push_back(static_cast<std::int32_t>(r));

    const auto evaluate = [&](const std::vector<int>& removed) {
        std::vector<std::size_t> cols;
        for (int id : removed) {
            const auto it = std::find(ds.marker_ids.begin(), ds.marker_ids.end(), id);
            cols.push_back(static_cast<std::size_t>(it - ds.marker_ids.begin()));
        }
        std::vector<int> truth, pred;
        std::vector<double> x;
        for (std::int32_t r : test_rows) {
            x = ds.features[r];
            for (std::size_t c : cols) x[c] = column_mean[c];
            truth.push_back(labels[r]);
            pred.push_back(model.model.predict(x));
        }
        return 100.0 * macro_f1(truth, pred, n_classes);
    };

    report.baseline = evaluate({});
    for (const auto& [name, removed] : sets.sets) {
        const double f1 = evaluate(removed);
        report.rows.push_back({name, removed, f1, detail::percent_change(f1, report.baseline)});
    }
    return report;
}

// --- Window sweep -----------------------------------------------------------

struct SweepCell {
    WindowPlan plan;
    double cv_accuracy = 0.0;
    double test_accuracy = 0.0;
    double mean_window_time_s = 0.0;  // mean marker compute time per window
    double total_time_s = 0.0;        // mean total marker time per trajectory
    bool present = false;
};

struct SweepResult {
    std::vector<SweepCell> cells;  // canonical 5x3 order

    const SweepCell* cell(int size, double overlap) const {
        for (const SweepCell& c : cells)
            if (c.plan.size == size && std::abs(c.plan.overlap - overlap) < 1e-9) return &c;
        return nullptr;
    }
};

struct PlanDataset {
    WindowPlan plan;
    LabeledDataset dataset;
    double mean_window_time_s = 0.0;
    double total_time_s = 0.0;
};

inline SweepResult sweep(const std::vector<PlanDataset>& datasets, LabelKind target,
                         const TrainConfig& cfg = {}) {
    SweepResult out;
    for (const WindowPlan& plan : canonical_plans()) {
        SweepCell cell;
        cell.plan = plan;
        const auto it = std::find_if(datasets.begin(), datasets.end(), [&](const PlanDataset& d) {
            return d.plan.size == plan.size && std::abs(d.plan.overlap - plan.overlap) < 1e-9;
        });
        if (it != datasets.end()) {
            const TrainResult r = train_tree(it->dataset, target, cfg);
            cell.cv_accuracy = 100.0 * r.cv_accuracy;
            cell.test_accuracy = 100.0 * r.test_accuracy;
            cell.mean_window_time_s = it->mean_window_time_s;
            cell.total_time_s = it->total_time_s;
            cell.present = true;
        }
        out.cells.push_back(cell);
    }
    return out;
}

}  // namespace swarm
