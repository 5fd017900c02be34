#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace swarm {

struct DegenerateModelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Binary CART with Gini impurity, midpoint thresholds, and lowest-feature-
// index tie-breaking. NaN feature values always route to the right child.
struct TreeNode {
    int feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    std::vector<double> class_dist;
    int majority = 0;
};

struct TreeModel {
    std::vector<TreeNode> nodes;
    int n_classes = 0;
    int max_depth = 0;
    int min_leaf = 1;

    int predict(std::span<const double> x) const {
        int n = 0;
        while (nodes[n].feature >= 0)
            n = x[nodes[n].feature] <= nodes[n].threshold ? nodes[n].left : nodes[n].right;
        return nodes[n].majority;
    }

    nlohmann::json to_json() const {
        nlohmann::json arr = nlohmann::json::array();
        for (const TreeNode& n : nodes) {
            if (n.feature >= 0)
                arr.push_back({{"feature", n.feature},
                               {"threshold", n.threshold},
                               {"left", n.left},
                               {"right", n.right}});
            else
                arr.push_back({{"class_dist", n.class_dist}, {"majority", n.majority}});
        }
        return {{"n_classes", n_classes},
                {"max_depth", max_depth},
                {"min_leaf", min_leaf},
                {"nodes", arr}};
    }

    static TreeModel from_json(const nlohmann::json& j) {
        TreeModel m;
        m.n_classes = j.at("n_classes").get<int>();
        m.max_depth = j.at("max_depth").get<int>();
        m.min_leaf = j.at("min_leaf").get<int>();
        for (const auto& nj : j.at("nodes")) {
            TreeNode n;
            if (nj.contains("feature")) {
                n.feature = nj["feature"].get<int>();
                n.threshold = nj["threshold"].get<double>();
                n.left = nj["left"].get<int>();
                n.right = nj["right"].get<int>();
            } else {
                n.class_dist = nj["class_dist"].get<std::vector<double>>();
                n.majority = nj["majority"].get<int>();
            }
            m.nodes.push_back(std::move(n));
        }
        return m;
    }
};

namespace detail {

// Index arrays per feature, sorted by that feature's value (NaN last), all
// restricted to one node's rows. Splitting partitions each array stably so
// the sort order survives without re-sorting.
struct SplitWork {
    const std::vector<std::vector<double>>* x = nullptr;
    const std::vector<int>* y = nullptr;
    int n_classes = 0;
    int n_features = 0;
    std::vector<std::vector<std::int32_t>> sorted;  // [feature][pos]
    std::vector<std::int32_t> scratch;
};

inline bool nan_last_less(double a, double b) {
    const bool na = std::isnan(a), nb = std::isnan(b);
    if (na || nb) return nb && !na;
    return a < b;
}

struct BestSplit {
    double impurity = std::numeric_limits<double>::infinity();
    int feature = -1;
    double threshold = 0.0;
    std::size_t left_count = 0;
};

inline double gini_from_counts(std::span<const double> counts, double total) {
    if (total <= 0.0) return 0.0;
    double sum_sq = 0.0;
    for (double c : counts) sum_sq += c * c;
    return 1.0 - sum_sq / (total * total);
}

inline BestSplit find_best_split(const SplitWork& work, std::size_t begin, std::size_t end,
                                 int min_leaf) {
    const auto& x = *work.x;
    const auto& y = *work.y;
    const double total = static_cast<double>(end - begin);
    BestSplit best;

    std::vector<double> left_counts(work.n_classes), right_counts(work.n_classes);
    for (int f = 0; f < work.n_features; ++f) {
        const auto& order = work.sorted[f];
        std::fill(left_counts.begin(), left_counts.end(), 0.0);
        std::fill(right_counts.begin(), right_counts.end(), 0.0);
        for (std::size_t p = begin; p < end; ++p) right_counts[y[order[p]]] += 1.0;

        for (std::size_t p = begin; p + 1 < end; ++p) {
            const int row = order[p];
            left_counts[y[row]] += 1.0;
            right_counts[y[row]] -= 1.0;
            const double v = x[row][f];
            const double v_next = x[order[p + 1]][f];
            if (std::isnan(v) || std::isnan(v_next) || v == v_next) continue;
            const std::size_t n_left = p - begin + 1;
            const std::size_t n_right = end - begin - n_left;
            if (n_left < static_cast<std::size_t>(min_leaf) ||
                n_right < static_cast<std::size_t>(min_leaf))
                continue;
            const double impurity =
                (static_cast<double>(n_left) / total) * gini_from_counts(left_counts, n_left) +
                (static_cast<double>(n_right) / total) * gini_from_counts(right_counts, n_right);
            if (impurity < best.impurity - 1e-12) {
                best.impurity = impurity;
                best.feature = f;
                best.threshold = v + (v_next - v) / 2.0;
                best.left_count = n_left;
            }
        }
    }
    return best;
}

}  // namespace detail

// Fits a CART on the given rows. `rows` selects into x/y; duplicates allowed.
inline TreeModel fit_tree(const std::vector<std::vector<double>>& x, const std::vector<int>& y,
                          std::span<const std::int32_t> rows, int n_classes, int max_depth,
                          int min_leaf) {
    if (rows.empty()) throw DegenerateModelError("fit_tree: no training rows");
    const int n_features = static_cast<int>(x[rows[0]].size());

    detail::SplitWork work;
    work.x = &x;
    work.y = &y;
    work.n_classes = n_classes;
    work.n_features = n_features;
    work.sorted.assign(n_features, std::vector<std::int32_t>(rows.begin(), rows.end()));
    for (int f = 0; f < n_features; ++f) {
        std::stable_sort(work.sorted[f].begin(), work.sorted[f].end(),
                         [&](std::int32_t a, std::int32_t b) {
                             return detail::nan_last_less(x[a][f], x[b][f]);
                         });
    }
    work.scratch.resize(rows.size());

    TreeModel model;
    model.n_classes = n_classes;
    model.max_depth = max_depth;
    model.min_leaf = min_leaf;

    struct Frame {
        int node;
        std::size_t begin, end;
        int depth;
    };
    model.nodes.emplace_back();
    std::vector<Frame> stack{{0, 0, rows.size(), 0}};

    while (!stack.empty()) {
        const Frame fr = stack.back();
        stack.pop_back();
        TreeNode& node = model.nodes[fr.node];

        std::vector<double> counts(n_classes, 0.0);
        for (std::size_t p = fr.begin; p < fr.end; ++p)
            counts[y[work.sorted[0][p]]] += 1.0;
        const double total = static_cast<double>(fr.end - fr.begin);

        const auto make_leaf = [&]() {
            node.feature = -1;
            node.class_dist.resize(n_classes);
            for (int c = 0; c < n_classes; ++c) node.class_dist[c] = counts[c] / total;
            node.majority = static_cast<int>(
                std::max_element(counts.begin(), counts.end()) - counts.begin());
        };

        const bool pure = std::count_if(counts.begin(), counts.end(),
                                        [](double c) { return c > 0.0; }) <= 1;
        if (pure || fr.depth >= max_depth ||
            fr.end - fr.begin < 2 * static_cast<std::size_t>(min_leaf)) {
            make_leaf();
            continue;
        }
        const detail::BestSplit best = detail::find_best_split(work, fr.begin, fr.end, min_leaf);
        if (best.feature < 0) {
            make_leaf();
            continue;
        }

        // Stable partition of every feature's order by the split decision.
        // Rows going left are exactly the first best.left_count entries of the
        // split feature's order.
        const std::size_t mid = fr.begin + best.left_count;
        {
            // Marks are set and cleared per node so the buffer never needs a
            // full wipe between nodes.
            static thread_local std::vector<char> left_mark;
            if (left_mark.size() < x.size()) left_mark.assign(x.size(), 0);
            const auto& order = work.sorted[best.feature];
            for (std::size_t p = fr.begin; p < mid; ++p) left_mark[order[p]] = 1;

            for (int f = 0; f < n_features; ++f) {
                auto& order_f = work.sorted[f];
                std::size_t out_left = fr.begin;
                std::size_t out_right = 0;
                for (std::size_t p = fr.begin; p < fr.end; ++p) {
                    const std::int32_t row = order_f[p];
                    if (left_mark[row]) order_f[out_left++] = row;
                    else work.scratch[out_right++] = row;
                }
                std::copy(work.scratch.begin(), work.scratch.begin() + out_right,
                          order_f.begin() + mid);
            }
            for (std::size_t p = fr.begin; p < mid; ++p) left_mark[work.sorted[0][p]] = 0;
        }

        model.nodes[fr.node].feature = best.feature;
        model.nodes[fr.node].threshold = best.threshold;
        const int left_id = static_cast<int>(model.nodes.size());
        model.nodes.emplace_back();
        const int right_id = static_cast<int>(model.nodes.size());
        model.nodes.emplace_back();
        model.nodes[fr.node].left = left_id;
        model.nodes[fr.node].right = right_id;
        stack.push_back({right_id, mid, fr.end, fr.depth + 1});
        stack.push_back({left_id, fr.begin, mid, fr.depth + 1});
    }
    return model;
}

}  // namespace swarm
