#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "swarm/info_theory.hpp"
#include "swarm/kinematics.hpp"
#include "swarm/segment.hpp"
#include "swarm/spatial.hpp"
#include "swarm/symbolize.hpp"
#include "swarm/timeseries.hpp"

namespace swarm {

inline constexpr int kNumMarkers = 42;

inline std::string marker_name(int id) { return "M" + std::to_string(id); }

inline std::vector<int> marker_set_full() {
    std::vector<int> ids(kNumMarkers);
    for (int i = 0; i < kNumMarkers; ++i) ids[i] = i + 1;
    return ids;
}

// The stationary-trait subset used by the exploration analyses.
inline std::vector<int> marker_set_23() {
    std::vector<int> ids(23);
    for (int i = 0; i < 23; ++i) ids[i] = i + 1;
    return ids;
}

struct MarkerConfig {
    double r_agent_repulse = 2.0;  // corridor and crowding scale for SA / PR
    double crowding_factor = 3.0;  // crowding radius = factor * r_agent_repulse
    int symbol_bins = 3;           // alphabet for the information estimators
};

// Marker values for every sheep over one window. Unavailable entries (window
// too short for an estimator) are NaN with available=false.
struct WindowMarkers {
    std::vector<int> marker_ids;
    std::vector<std::vector<double>> values;   // [sheep][slot]
    std::vector<std::vector<bool>> available;  // [sheep][slot]
};

namespace detail {

struct MarkerNeeds {
    bool kinematics = false, dba = false, sa = false, pr = false, xcorr = false;
    bool te_family = false, dtw = false, ais = false, etc = false, shannon = false;
    bool lyapunov = false, nsr = false, psd = false;
    bool speeds = false, symbols = false;
};

inline MarkerNeeds marker_needs(std::span<const int> ids) {
    MarkerNeeds n;
    for (int id : ids) {
        if ((id >= 1 && id <= 6) || id == 14 || (id >= 17 && id <= 20)) n.kinematics = true;
        else if (id >= 7 && id <= 8) n.sa = true;
        else if (id >= 9 && id <= 10) n.pr = true;
        else if (id >= 11 && id <= 13) n.dba = true;
        else if (id >= 15 && id <= 16) n.xcorr = true;
        else if (id == 21 || id == 22 || id == 23 || id == 27 || (id >= 29 && id <= 36))
            n.te_family = true;
        else if (id == 24 || id == 25) n.dtw = true;
        else if (id == 26) n.ais = true;
        else if (id == 28) n.etc = true;
        else if (id == 37 || id == 38) n.lyapunov = true;
        else if (id == 39 || id == 40) n.nsr = true;
        else if (id == 41) n.psd = true;
        else if (id == 42) n.shannon = true;
    }
    n.speeds = n.xcorr || n.dtw || n.lyapunov || n.nsr || n.psd;
    n.symbols = n.te_family || n.ais || n.etc || n.shannon;
    return n;
}

}  // namespace detail

// Evaluates the requested markers for every sheep in the window. Pairwise
// intermediates (TE matrix, DTW matrix, per-tick spatial contexts) are
// computed once and shared across agents.
inline WindowMarkers compute_window_markers(const Segment& seg, std::span<const int> ids,
                                            const MarkerConfig& cfg = {}) {
    const int n_sheep = seg.n_sheep;
    const int n_agents = seg.n_agents();
    const int k = seg.n_ticks();
    const auto needs = detail::marker_needs(ids);
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();

    WindowMarkers out;
    out.marker_ids.assign(ids.begin(), ids.end());
    out.values.assign(n_sheep, std::vector<double>(ids.size(), nan));
    out.available.assign(n_sheep, std::vector<bool>(ids.size(), false));

    // Shared intermediates.
    std::vector<std::vector<double>> speeds;
    if (needs.speeds && k >= 2) {
        speeds.resize(n_agents);
        for (int a = 0; a < n_agents; ++a) speeds[a] = speed_series(seg, a);
    }
    std::vector<std::vector<int>> symbols;
    if (needs.symbols && k >= 3) {
        symbols.resize(n_agents);
        for (int a = 0; a < n_agents; ++a)
            symbols[a] = symbolize(heading_change_series(seg, a), cfg.symbol_bins);
    }
    std::vector<std::vector<double>> te;
    if (needs.te_family && k >= 4) te = te_matrix(symbols);

    std::vector<std::vector<double>> dtw;
    if (needs.dtw && k >= 2) {
        dtw.assign(n_sheep, std::vector<double>(n_sheep, 0.0));
        for (int i = 0; i < n_sheep; ++i)
            for (int j = i + 1; j < n_sheep; ++j)
                dtw[i][j] = dtw[j][i] = dtw_distance(speeds[i], speeds[j]);
    }

    // Per-tick SA / PR series per sheep.
    std::vector<std::vector<double>> sa_series, pr_series;
    if (needs.sa || needs.pr) {
        sa_series.assign(n_sheep, {});
        pr_series.assign(n_sheep, {});
        for (int t = 0; t < k; ++t) {
            const auto ctxs =
                spatial_contexts_at_tick(seg.positions[t], n_sheep, cfg.r_agent_repulse,
                                         cfg.crowding_factor * cfg.r_agent_repulse);
            for (int i = 0; i < n_sheep; ++i) {
                if (needs.sa) sa_series[i].push_back(situation_awareness(ctxs[i]));
                if (needs.pr) pr_series[i].push_back(predation_risk(ctxs[i], n_sheep));
            }
        }
    }

    for (int i = 0; i < n_sheep; ++i) {
        KinematicStats kin;
        const bool kin_ok = needs.kinematics && k >= 3;
        if (kin_ok) kin = kinematic_stats(seg, i);
        DbaStats dba;
        const bool dba_ok = needs.dba && k >= 3;
        if (dba_ok) dba = dba_stats(seg, i);
        CrossCorrelationStats xc;
        const bool xc_ok = needs.xcorr && k >= 4;
        if (xc_ok) xc = cross_correlation_stats(seg, i);

        const bool te_ok = needs.te_family && k >= 4;
        std::vector<double> sync_vals, in_flow, out_flow;
        double net_beta = 0.0, tot_beta = 0.0, internal_net = 0.0, agg_infl = 0.0, net_source = 0.0;
        if (te_ok) {
            const int beta = seg.shepherd();
            for (int j = 0; j < n_agents; ++j) {
                if (j == i) continue;
                const double fwd = te[j][i];  // j -> i
                const double rev = te[i][j];  // i -> j
                PairwiseTE pair{fwd, rev, fwd - rev, fwd + rev, 0.0};
                sync_vals.push_back(synchronicity(pair));
                in_flow.push_back(fwd);
                out_flow.push_back(rev);
                agg_infl += fwd + rev;
                net_source += rev;
                if (j < n_sheep) internal_net += fwd - rev;
            }
            net_beta = te[i][beta] - te[beta][i];  // sheep as source vs the shepherd
            tot_beta = te[i][beta] + te[beta][i];
        }

        std::vector<double> dtw_vals;
        if (needs.dtw && k >= 2) {
            for (int j = 0; j < n_sheep; ++j)
                if (j != i) dtw_vals.push_back(dtw[i][j]);
        }

        std::vector<double> lyap_slopes, nsr_vals;
        if (needs.lyapunov && k >= 8) lyap_slopes = lyapunov_divergence_slopes(speeds[i]);
        if (needs.nsr && k >= 4) nsr_vals = noise_to_signal_series(speeds[i]);

        for (std::size_t s = 0; s < ids.size(); ++s) {
            double v = nan;
            bool ok = true;
            switch (ids[s]) {
                case 1: ok = kin_ok; v = kin.segment_speed; break;
                case 2: ok = kin_ok; v = kin.path_rate; break;
                case 3: ok = kin_ok; v = kin.speed_mean; break;
                case 4: ok = kin_ok; v = kin.speed_var; break;
                case 5: ok = kin_ok; v = kin.heading_mean; break;
                case 6: ok = kin_ok; v = kin.heading_var; break;
                case 7: ok = !sa_series[i].empty(); v = ok ? mean(sa_series[i]) : nan; break;
                case 8: ok = !sa_series[i].empty(); v = ok ? variance(sa_series[i]) : nan; break;
                case 9: ok = !pr_series[i].empty(); v = ok ? mean(pr_series[i]) : nan; break;
                case 10: ok = !pr_series[i].empty(); v = ok ? variance(pr_series[i]) : nan; break;
                case 11: ok = dba_ok; v = dba.dba_mean; break;
                case 12: ok = dba_ok; v = dba.dba_var; break;
                case 13: ok = dba_ok; v = dba.odba; break;
                case 14: ok = kin_ok; v = kin.turn_rate; break;
                case 15: ok = xc_ok; v = xc.xcorr_mean; break;
                case 16: ok = xc_ok; v = xc.xcorr_var; break;
                case 17: ok = kin_ok; v = kin.shepherd_dist_mean; break;
                case 18: ok = kin_ok; v = kin.shepherd_dist_var; break;
                case 19: ok = kin_ok; v = kin.shepherd_dist_max; break;
                case 20: ok = kin_ok; v = kin.shepherd_dist_min; break;
                case 21: ok = te_ok; v = te_ok ? mean(sync_vals) : nan; break;
                case 22: ok = te_ok; v = te_ok ? variance(sync_vals) : nan; break;
                case 23: ok = te_ok; v = net_beta; break;
                case 24: ok = !dtw_vals.empty(); v = ok ? mean(dtw_vals) : nan; break;
                case 25: ok = !dtw_vals.empty(); v = ok ? variance(dtw_vals) : nan; break;
                case 26:
                    ok = needs.ais && k >= 4;
                    v = ok ? active_information_storage(symbols[i]) : nan;
                    break;
                case 27: ok = te_ok; v = tot_beta; break;
                case 28:
                    ok = needs.etc && k >= 3;
                    v = ok ? static_cast<double>(effort_to_compress(symbols[i])) : nan;
                    break;
                case 29: ok = te_ok; v = internal_net; break;
                case 30: ok = te_ok; v = -net_beta; break;
                case 31: ok = te_ok; v = agg_infl; break;
                case 32: ok = te_ok; v = net_source; break;
                case 33: ok = te_ok; v = te_ok ? mean(in_flow) : nan; break;
                case 34: ok = te_ok; v = te_ok ? variance(in_flow) : nan; break;
                case 35: ok = te_ok; v = te_ok ? mean(out_flow) : nan; break;
                case 36: ok = te_ok; v = te_ok ? variance(out_flow) : nan; break;
                case 37:
                case 38:
                    ok = needs.lyapunov && k >= 8;
                    if (ok) {
                        if (lyap_slopes.empty()) v = 0.0;
                        else v = ids[s] == 37 ? mean(lyap_slopes) : variance(lyap_slopes);
                    }
                    break;
                case 39:
                case 40:
                    ok = needs.nsr && k >= 4;
                    if (ok) v = ids[s] == 39 ? mean(nsr_vals) : variance(nsr_vals);
                    break;
                case 41: ok = needs.psd && k >= 3; v = ok ? spectral_entropy(speeds[i]) : nan; break;
                case 42: ok = needs.shannon && k >= 3; v = ok ? shannon_entropy(symbols[i]) : nan; break;
                default: ok = false; break;
            }
            out.values[i][s] = ok ? v : nan;
            out.available[i][s] = ok;
        }
    }
    return out;
}

}  // namespace swarm
