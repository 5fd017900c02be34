#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "swarm/csv.hpp"
#include "swarm/rng.hpp"
#include "swarm/windowing.hpp"

namespace swarm {

struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RowMeta {
    ScenarioId scenario = ScenarioId::S5;
    std::uint64_t seed = 0;
    long window_index = 0;
    int agent_id = 0;
};

enum class LabelKind { Agent, Swarm11, Swarm2 };

// Flattened (window, sheep) marker rows with labels and a train/test split.
// The split is assigned per (scenario, seed, window) group so no window leaks
// across it, stratified by scenario which keeps agent-type representation
// consistent between the two sides.
struct LabeledDataset {
    std::vector<int> marker_ids;
    std::vector<std::vector<double>> features;
    std::vector<int> agent_label;   // ProfileId index
    std::vector<int> swarm11;       // ScenarioId index
    std::vector<int> swarm2;        // 0 homogeneous, 1 heterogeneous
    std::vector<RowMeta> meta;
    std::vector<char> is_test;

    std::size_t n_rows() const { return features.size(); }

    const std::vector<int>& labels(LabelKind kind) const {
        switch (kind) {
            case LabelKind::Agent: return agent_label;
            case LabelKind::Swarm11: return swarm11;
            case LabelKind::Swarm2: return swarm2;
        }
        throw std::logic_error("bad label kind");
    }

    int n_classes(LabelKind kind) const {
        const auto& l = labels(kind);
        return l.empty() ? 0 : *std::max_element(l.begin(), l.end()) + 1;
    }
};

inline LabeledDataset build_labeled_dataset(const std::vector<MarkerMatrix>& matrices,
                                            std::uint64_t shuffle_seed,
                                            double test_fraction = 0.2) {
    LabeledDataset ds;
    if (matrices.empty()) return ds;
    ds.marker_ids = matrices.front().marker_ids;
    for (const MarkerMatrix& m : matrices)
        if (m.marker_ids != ds.marker_ids)
            throw SchemaError("marker matrices disagree on the marker set");

    struct Group {
        const MarkerMatrix* matrix;
        int window;
    };
    std::map<int, std::vector<Group>> by_scenario;
    for (const MarkerMatrix& m : matrices)
        for (int w = 0; w < m.n_windows(); ++w)
            by_scenario[static_cast<int>(m.scenario_id)].push_back({&m, w});

    Rng rng(shuffle_seed);
    std::vector<std::pair<Group, char>> ordered;  // (group, is_test)
    for (auto& [scenario, groups] : by_scenario) {
        rng.shuffle(groups);
        const std::size_t n_test =
            static_cast<std::size_t>(std::llround(test_fraction * groups.size()));
        for (std::size_t g = 0; g < groups.size(); ++g)
            ordered.emplace_back(groups[g], g < n_test ? 1 : 0);
    }
    rng.shuffle(ordered);

    for (const auto& [group, test] : ordered) {
        const MarkerMatrix& m = *group.matrix;
        const WindowMarkers& win = m.windows[group.window];
        for (int i = 0; i < m.n_sheep(); ++i) {
            const auto& avail = win.available[i];
            if (std::none_of(avail.begin(), avail.end(), [](bool b) { return b; }))
                continue;  // fully masked row
            ds.features.push_back(win.values[i]);
            ds.agent_label.push_back(static_cast<int>(m.profile_labels[i]));
            ds.swarm11.push_back(static_cast<int>(m.scenario_id));
            ds.swarm2.push_back(is_heterogeneous(m.scenario_id) ? 1 : 0);
            ds.meta.push_back({m.scenario_id, m.seed, group.window, i});
            ds.is_test.push_back(test);
        }
    }
    return ds;
}

// Restriction of the dataset to a subset of marker columns.
inline LabeledDataset select_markers(const LabeledDataset& ds, const std::vector<int>& keep_ids) {
    std::vector<std::size_t> cols;
    for (int id : keep_ids) {
        const auto it = std::find(ds.marker_ids.begin(), ds.marker_ids.end(), id);
        if (it == ds.marker_ids.end())
            throw SchemaError("marker " + marker_name(id) + " not present in dataset");
        cols.push_back(static_cast<std::size_t>(it - ds.marker_ids.begin()));
    }
    LabeledDataset out = ds;
    out.marker_ids = keep_ids;
    out.features.assign(ds.features.size(), {});
    for (std::size_t r = 0; r < ds.features.size(); ++r) {
        out.features[r].reserve(cols.size());
        for (std::size_t c : cols) out.features[r].push_back(ds.features[r][c]);
    }
    return out;
}

// --- Feature CSV: scenario,seed,window_index,agent_id,agent_label,swarm_label,M... ---

inline std::string feature_csv_header(const std::vector<int>& marker_ids) {
    std::string h = "scenario,seed,window_index,agent_id,agent_label,swarm_label";
    for (int id : marker_ids) {
        h += ',';
        h += marker_name(id);
    }
    h += '\n';
    return h;
}

inline std::string marker_matrix_to_csv(const MarkerMatrix& m) {
    std::string out = feature_csv_header(m.marker_ids);
    for (int w = 0; w < m.n_windows(); ++w) {
        for (int i = 0; i < m.n_sheep(); ++i) {
            out += to_string(m.scenario_id);
            out += ',';
            out += std::to_string(m.seed);
            out += ',';
            out += std::to_string(w);
            out += ',';
            out += std::to_string(i);
            out += ',';
            out += to_string(m.profile_labels[i]);
            out += ',';
            out += to_string(m.scenario_id);
            for (int s = 0; s < m.n_markers(); ++s) {
                out += ',';
                if (m.windows[w].available[i][s])
                    out += format_double(m.windows[w].values[i][s]);
                // masked cells stay empty
            }
            out += '\n';
        }
    }
    return out;
}

}  // namespace swarm
