// swarmkit: simulate shepherded swarms, extract windowed information markers,
// and run the recognition / interaction analyses as reproducible pipelines.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "swarm/dataset.hpp"
#include "swarm/interaction.hpp"
#include "swarm/io.hpp"
#include "swarm/manifest.hpp"
#include "swarm/parallel.hpp"
#include "swarm/recognition.hpp"
#include "swarm/sim.hpp"
#include "swarm/train.hpp"
#include "swarm/windowing.hpp"

namespace fs = std::filesystem;
using namespace swarm;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitMissing = 4;

struct MissingArtifactError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string plan_tag(const WindowPlan& plan) {
    return "w" + std::to_string(plan.size) + "_o" +
           std::to_string(static_cast<int>(std::lround(plan.overlap * 100)));
}

std::vector<int> parse_marker_set(const std::string& arg) {
    if (arg == "42" || arg == "full") return marker_set_full();
    if (arg == "23") return marker_set_23();
    std::vector<int> ids;
    std::stringstream ss(arg);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        if (!tok.empty() && tok[0] == 'M') tok = tok.substr(1);
        const long id = parse_long(tok);
        if (id < 1 || id > kNumMarkers)
            throw ConfigError("marker id out of range: " + tok);
        ids.push_back(static_cast<int>(id));
    }
    if (ids.empty()) throw ConfigError("empty marker set");
    return ids;
}

LabelKind parse_target(const std::string& s) {
    if (s == "agent") return LabelKind::Agent;
    if (s == "swarm11") return LabelKind::Swarm11;
    if (s == "swarm2") return LabelKind::Swarm2;
    throw ConfigError("unknown training target: " + s);
}

std::string target_name(LabelKind k) {
    switch (k) {
        case LabelKind::Agent: return "agent";
        case LabelKind::Swarm11: return "swarm11";
        case LabelKind::Swarm2: return "swarm2";
    }
    return "?";
}

// --- simulate ---------------------------------------------------------------

int cmd_simulate(const std::string& scenario_path, std::uint64_t seed,
                 const std::string& out_path) {
    const ScenarioSpec spec = load_scenario(scenario_path);
    const Trajectory traj = run_scenario(spec, seed);

    RunManifest manifest;
    manifest.command = "simulate";
    manifest.inputs.emplace_back(scenario_path, hash_file(scenario_path));
    manifest.seeds = {seed};
    manifest.extra["scenario"] = to_string(spec.id);
    manifest.extra["ticks"] = traj.n_ticks();
    manifest.extra["goal_reached"] = traj.goal_reached;
    write_artifact(manifest, out_path, trajectory_to_csv(traj));
    manifest.write(out_path + ".manifest.json");
    std::cout << "wrote " << out_path << " (" << traj.n_ticks() << " ticks, goal "
              << (traj.goal_reached ? "reached" : "not reached") << ")\n";
    return 0;
}

// --- markers ----------------------------------------------------------------

int cmd_markers(const std::string& traj_path, int window, double overlap,
                const std::string& set_arg, const std::string& out_path) {
    const Trajectory traj = trajectory_from_csv(traj_path);
    const WindowPlan plan{window, overlap};
    const std::vector<int> ids = parse_marker_set(set_arg);
    const MarkerMatrix matrix = compute_marker_matrix(traj, plan, ids);

    RunManifest manifest;
    manifest.command = "markers";
    manifest.inputs.emplace_back(traj_path, hash_file(traj_path));
    manifest.extra["window"] = plan.size;
    manifest.extra["overlap"] = plan.overlap;
    manifest.extra["n_windows"] = matrix.n_windows();
    manifest.extra["mean_window_time_s"] = matrix.window_time_mean_s;
    manifest.extra["total_time_s"] = matrix.total_time_s;
    write_artifact(manifest, out_path, marker_matrix_to_csv(matrix));
    manifest.write(out_path + ".manifest.json");
    std::cout << "wrote " << out_path << " (" << matrix.n_windows() << " windows x "
              << matrix.n_sheep() << " agents)\n";
    return 0;
}

// --- pipeline ---------------------------------------------------------------

struct PipelineOptions {
    std::string out_dir = "out";
    std::vector<std::string> scenarios = {"all"};
    int n_seeds = 20;
    long max_ticks = 300;
    bool regenerate = false;
    bool run_sweep = false;
    std::string train_target;
    std::string ablate;
    bool associate = false;
    bool attention = false;
    double eta = 0.5;
    int window = 20;
    double overlap = 0.75;
    std::uint64_t shuffle_seed = 1;
    int folds = 10;
    int opt_budget = 30;
};

std::vector<ScenarioId> resolve_scenarios(const std::vector<std::string>& args, long max_ticks) {
    std::vector<ScenarioId> out;
    for (const std::string& a : args) {
        if (a == "all") {
            for (int i = 0; i < kNumScenarios; ++i) out.push_back(static_cast<ScenarioId>(i));
            continue;
        }
        const auto id = scenario_from_string(a);
        if (!id) throw ConfigError("unknown scenario: " + a);
        out.push_back(*id);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    (void)max_ticks;
    return out;
}

struct PlanArtifacts {
    WindowPlan plan;
    std::vector<MarkerMatrix> matrices;
    double mean_window_time_s = 0.0;
    double total_time_s = 0.0;
};

std::string features_path(const PipelineOptions& opt, const WindowPlan& plan) {
    return (fs::path(opt.out_dir) / ("features_" + plan_tag(plan) + ".csv")).string();
}

// Rebuilds per-trajectory marker matrices from a feature CSV.
std::vector<MarkerMatrix> load_feature_csv(const std::string& path, const WindowPlan& plan) {
    const auto lines = read_lines(path);
    if (lines.empty()) throw IoError(path + ": empty feature file");
    const auto header = split_csv_line(lines[0]);
    if (header.size() < 7 || header[0] != "scenario")
        throw IoError(path + ": unexpected feature header");
    std::vector<int> ids;
    for (std::size_t c = 6; c < header.size(); ++c)
        ids.push_back(static_cast<int>(parse_long(header[c].substr(1))));

    std::map<std::pair<int, std::uint64_t>, MarkerMatrix> grouped;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        if (lines[li].empty()) continue;
        const auto f = split_csv_line(lines[li]);
        if (f.size() != header.size())
            throw IoError(path + ": bad row at line " + std::to_string(li + 1));
        const auto scenario = scenario_from_string(f[0]);
        if (!scenario) throw IoError(path + ": unknown scenario " + f[0]);
        const auto seed = static_cast<std::uint64_t>(parse_long(f[1]));
        const int window = static_cast<int>(parse_long(f[2]));
        const int agent = static_cast<int>(parse_long(f[3]));
        const auto profile = profile_from_string(f[4]);
        if (!profile) throw IoError(path + ": unknown profile " + f[4]);

        MarkerMatrix& m = grouped[{static_cast<int>(*scenario), seed}];
        if (m.marker_ids.empty()) {
            m.marker_ids = ids;
            m.plan = plan;
            m.scenario_id = *scenario;
            m.seed = seed;
        }
        if (agent >= static_cast<int>(m.profile_labels.size()))
            m.profile_labels.resize(agent + 1, *profile);
        m.profile_labels[agent] = *profile;
        if (window >= m.n_windows()) {
            m.windows.resize(window + 1);
            m.window_ranges.resize(window + 1);
        }
        WindowMarkers& win = m.windows[window];
        if (win.marker_ids.empty()) win.marker_ids = ids;
        if (agent >= static_cast<int>(win.values.size())) {
            win.values.resize(agent + 1,
                              std::vector<double>(ids.size(),
                                                  std::numeric_limits<double>::quiet_NaN()));
            win.available.resize(agent + 1, std::vector<bool>(ids.size(), false));
        }
        for (std::size_t c = 0; c < ids.size(); ++c) {
            const std::string& cell = f[6 + c];
            if (cell.empty()) continue;
            win.values[agent][c] = parse_double(cell);
            win.available[agent][c] = true;
        }
    }
    std::vector<MarkerMatrix> out;
    out.reserve(grouped.size());
    for (auto& [key, m] : grouped) out.push_back(std::move(m));
    return out;
}

// Generates (or loads) the feature artifacts for the requested plans.
std::vector<PlanArtifacts> ensure_features(const PipelineOptions& opt,
                                           const std::vector<WindowPlan>& plans,
                                           RunManifest& pipeline_manifest) {
    const std::vector<ScenarioId> scenarios = resolve_scenarios(opt.scenarios, opt.max_ticks);

    std::vector<WindowPlan> to_generate;
    for (const WindowPlan& plan : plans) {
        if (opt.regenerate || !fs::exists(features_path(opt, plan)))
            to_generate.push_back(plan);
    }
    if (!to_generate.empty() && !opt.regenerate) {
        throw MissingArtifactError("missing feature artifact " +
                                   features_path(opt, to_generate.front()) +
                                   " (run with --regenerate)");
    }

    if (!to_generate.empty()) {
        // Simulate each (scenario, seed) once and window every plan off it.
        struct Job {
            ScenarioId scenario;
            std::uint64_t seed;
        };
        std::vector<Job> jobs;
        for (ScenarioId s : scenarios)
            for (int seed = 1; seed <= opt.n_seeds; ++seed)
                jobs.push_back({s, static_cast<std::uint64_t>(seed)});

        std::vector<Trajectory> trajectories(jobs.size());
        parallel_for(jobs.size(), [&](std::size_t i) {
            ScenarioSpec spec = canonical_scenario(jobs[i].scenario);
            spec.max_ticks = opt.max_ticks;
            spec.goal_radius = 0.0;  // run the full observation period
            trajectories[i] = run_scenario(spec, jobs[i].seed);
        });

        for (const WindowPlan& plan : to_generate) {
            std::vector<MarkerMatrix> matrices(trajectories.size());
            parallel_for(trajectories.size(), [&](std::size_t i) {
                matrices[i] = compute_marker_matrix(trajectories[i], plan, marker_set_full());
            });
            std::string csv = feature_csv_header(marker_set_full());
            double total_time = 0.0;
            long total_windows = 0;
            for (const MarkerMatrix& m : matrices) {
                const std::string body = marker_matrix_to_csv(m);
                csv += body.substr(body.find('\n') + 1);
                total_time += m.total_time_s;
                total_windows += m.n_windows();
            }
            RunManifest manifest;
            manifest.command = "pipeline:features";
            for (int seed = 1; seed <= opt.n_seeds; ++seed)
                manifest.seeds.push_back(static_cast<std::uint64_t>(seed));
            manifest.extra["window"] = plan.size;
            manifest.extra["overlap"] = plan.overlap;
            manifest.extra["max_ticks"] = opt.max_ticks;
            manifest.extra["mean_window_time_s"] =
                total_windows > 0 ? total_time / total_windows : 0.0;
            manifest.extra["total_time_s"] =
                matrices.empty() ? 0.0 : total_time / static_cast<double>(matrices.size());
            write_artifact(manifest, features_path(opt, plan), csv);
            manifest.write(features_path(opt, plan) + ".manifest.json");
            std::cout << "features " << plan_tag(plan) << ": " << total_windows << " windows\n";
        }
    }

    std::vector<PlanArtifacts> out;
    for (const WindowPlan& plan : plans) {
        PlanArtifacts art;
        art.plan = plan;
        const std::string path = features_path(opt, plan);
        art.matrices = load_feature_csv(path, plan);
        pipeline_manifest.inputs.emplace_back(path, hash_file(path));
        const std::string mpath = path + ".manifest.json";
        if (fs::exists(mpath)) {
            std::ifstream in(mpath);
            json mj;
            in >> mj;
            art.mean_window_time_s = mj.value("mean_window_time_s", 0.0);
            art.total_time_s = mj.value("total_time_s", 0.0);
        }
        out.push_back(std::move(art));
    }
    return out;
}

std::string sweep_grid_csv(const SweepResult& result, bool times) {
    std::string csv = times ? "overlap,type,w20,w40,w60,w80,w100\n"
                            : "overlap,type,w20,w40,w60,w80,w100\n";
    for (double overlap : {0.75, 0.50, 0.25}) {
        for (int row = 0; row < 2; ++row) {
            csv += std::to_string(static_cast<int>(std::lround(overlap * 100))) + "%";
            csv += times ? (row == 0 ? ",mu_t" : ",T") : (row == 0 ? ",V" : ",T");
            for (int w : {20, 40, 60, 80, 100}) {
                const SweepCell* cell = result.cell(w, overlap);
                csv += ',';
                if (cell && cell->present) {
                    double v;
                    if (times)
                        v = row == 0 ? cell->mean_window_time_s : cell->total_time_s;
                    else
                        v = row == 0 ? cell->cv_accuracy : cell->test_accuracy;
                    csv += times ? format_double(v) : format_double_fixed(v, 1);
                }
            }
            csv += '\n';
        }
    }
    return csv;
}

std::string ablation_csv(const AblationReport& report) {
    std::string csv = "marker_set," + report.metric_name + ",percent_change\n";
    csv += "M," + format_double_fixed(report.baseline, 1) + ",\n";
    for (const AblationRow& row : report.rows) {
        csv += "M - " + row.set_name + "," + format_double_fixed(row.metric, 1) + "," +
               format_double_fixed(row.percent_change, 1) + "\n";
    }
    return csv;
}

int cmd_pipeline(const PipelineOptions& opt) {
    if (opt.eta <= 0.0 || opt.eta > 1.0) throw ConfigError("--eta must be in (0, 1]");
    fs::create_directories(opt.out_dir);

    RunManifest manifest;
    manifest.command = "pipeline";
    manifest.extra["shuffle_seed"] = opt.shuffle_seed;

    const WindowPlan base_plan{opt.window, opt.overlap};
    std::vector<WindowPlan> plans;
    if (opt.run_sweep) plans = canonical_plans();
    else plans.push_back(base_plan);

    const std::vector<PlanArtifacts> artifacts = ensure_features(opt, plans, manifest);

    const auto dataset_for = [&](const PlanArtifacts& art) {
        return build_labeled_dataset(art.matrices, opt.shuffle_seed);
    };
    const auto base_artifact = [&]() -> const PlanArtifacts& {
        for (const PlanArtifacts& a : artifacts)
            if (a.plan.size == base_plan.size &&
                std::abs(a.plan.overlap - base_plan.overlap) < 1e-9)
                return a;
        return artifacts.front();
    };

    TrainConfig tcfg;
    tcfg.folds = opt.folds;
    tcfg.opt_budget = opt.opt_budget;
    tcfg.seed = opt.shuffle_seed;

    if (opt.run_sweep) {
        const LabelKind target = parse_target(opt.train_target.empty() ? "agent"
                                                                       : opt.train_target);
        std::vector<PlanDataset> plan_datasets;
        for (const PlanArtifacts& art : artifacts) {
            PlanDataset pd;
            pd.plan = art.plan;
            pd.dataset = dataset_for(art);
            pd.mean_window_time_s = art.mean_window_time_s;
            pd.total_time_s = art.total_time_s;
            plan_datasets.push_back(std::move(pd));
        }
        const SweepResult result = sweep(plan_datasets, target, tcfg);
        const std::string acc_path =
            (fs::path(opt.out_dir) / ("sweep_" + target_name(target) + ".csv")).string();
        write_artifact(manifest, acc_path, sweep_grid_csv(result, false));
        const std::string time_path = (fs::path(opt.out_dir) / "sweep_times.csv").string();
        write_artifact(manifest, time_path, sweep_grid_csv(result, true));
        std::cout << "sweep (" << target_name(target) << "): wrote " << acc_path << "\n";
    } else if (!opt.train_target.empty()) {
        const LabelKind target = parse_target(opt.train_target);
        const LabeledDataset ds = dataset_for(base_artifact());
        const TrainResult r = train_tree(ds, target, tcfg);
        const std::string model_path =
            (fs::path(opt.out_dir) / ("model_" + target_name(target) + ".json")).string();
        write_artifact(manifest, model_path, r.model.to_json().dump(2) + "\n");
        std::string metrics = "target,cv_accuracy,test_accuracy,test_macro_f1,max_depth,min_leaf\n";
        metrics += target_name(target) + "," + format_double_fixed(100.0 * r.cv_accuracy, 1) +
                   "," + format_double_fixed(100.0 * r.test_accuracy, 1) + "," +
                   format_double_fixed(100.0 * r.test_macro_f1, 1) + "," +
                   std::to_string(r.best_max_depth) + "," + std::to_string(r.best_min_leaf) + "\n";
        const std::string metrics_path =
            (fs::path(opt.out_dir) / ("train_" + target_name(target) + ".csv")).string();
        write_artifact(manifest, metrics_path, metrics);
        std::cout << "train (" << target_name(target)
                  << "): cv=" << format_double_fixed(100.0 * r.cv_accuracy, 1)
                  << " test=" << format_double_fixed(100.0 * r.test_accuracy, 1) << "\n";
    }

    if (!opt.ablate.empty()) {
        if (opt.ablate != "e1" && opt.ablate != "e2" && opt.ablate != "both")
            throw ConfigError("--ablate must be e1, e2 or both");
        const LabeledDataset full = dataset_for(base_artifact());
        const LabeledDataset ds23 = select_markers(full, marker_set_23());
        const MiSelection mi = mi_select(ds23, LabelKind::Agent, 0.95);
        const AblationSets sets = standard_ablation_sets(ds23.marker_ids, mi.selected);

        std::string mi_csv = "rank,marker,marginal_mi_bits,selected\n";
        for (std::size_t i = 0; i < mi.greedy_order.size(); ++i) {
            const bool sel = std::find(mi.selected.begin(), mi.selected.end(),
                                       mi.greedy_order[i]) != mi.selected.end();
            mi_csv += std::to_string(i + 1) + "," + marker_name(mi.greedy_order[i]) + "," +
                      format_double(mi.marginal_gain[i]) + "," + (sel ? "1" : "0") + "\n";
        }
        write_artifact(manifest, (fs::path(opt.out_dir) / "mi_selection.csv").string(), mi_csv);

        const TrainResult baseline = train_tree(ds23, LabelKind::Agent, tcfg);
        if (opt.ablate == "e1" || opt.ablate == "both") {
            const AblationReport e1 = ablate_retrain(ds23, LabelKind::Agent, baseline, sets,
                                                     opt.folds, opt.shuffle_seed);
            write_artifact(manifest, (fs::path(opt.out_dir) / "ablation_e1.csv").string(),
                           ablation_csv(e1));
            std::cout << "ablation e1: baseline " << format_double_fixed(e1.baseline, 1) << "\n";
        }
        if (opt.ablate == "e2" || opt.ablate == "both") {
            const AblationReport e2 = ablate_impute(ds23, LabelKind::Agent, baseline, sets);
            write_artifact(manifest, (fs::path(opt.out_dir) / "ablation_e2.csv").string(),
                           ablation_csv(e2));
            std::cout << "ablation e2: baseline " << format_double_fixed(e2.baseline, 1) << "\n";
        }
    }

    if (opt.associate || opt.attention) {
        const PlanArtifacts& art = base_artifact();
        std::map<int, std::vector<double>> association_by_scenario;  // pooled over seeds
        std::map<int, std::vector<double>> attention_by_scenario;
        bool wrote_matrix_example = false;

        for (const MarkerMatrix& full_matrix : art.matrices) {
            MarkerMatrix matrix = full_matrix;  // restrict to the 23-marker subset
            {
                std::vector<int> keep_slots;
                for (int s = 0; s < full_matrix.n_markers(); ++s)
                    if (full_matrix.marker_ids[s] <= 23) keep_slots.push_back(s);
                matrix.marker_ids.clear();
                for (int s : keep_slots) matrix.marker_ids.push_back(full_matrix.marker_ids[s]);
                for (WindowMarkers& win : matrix.windows) {
                    auto values = win.values;
                    auto avail = win.available;
                    win.marker_ids = matrix.marker_ids;
                    for (int i = 0; i < matrix.n_sheep(); ++i) {
                        win.values[i].clear();
                        std::vector<bool> row_avail;
                        for (int s : keep_slots) {
                            win.values[i].push_back(values[i][s]);
                            row_avail.push_back(avail[i][s]);
                        }
                        win.available[i] = row_avail;
                    }
                }
            }

            const int scenario = static_cast<int>(matrix.scenario_id);
            const int k = [&]() {
                const ScenarioSpec spec = canonical_scenario(matrix.scenario_id);
                return static_cast<int>(spec.mixture.size());
            }();

            if (opt.associate) {
                const AssociationResult assoc = agent_association(matrix, k, matrix.seed);
                for (double s : assoc.association_score)
                    association_by_scenario[scenario].push_back(s);
                if (!wrote_matrix_example && matrix.seed == 1) {
                    std::string csv;
                    for (int i = 0; i < matrix.n_sheep(); ++i) {
                        for (int j = 0; j < matrix.n_sheep(); ++j) {
                            if (j) csv += ',';
                            csv += std::to_string(assoc.adjacency_sum[i][j]);
                        }
                        csv += '\n';
                    }
                    write_artifact(manifest,
                                   (fs::path(opt.out_dir) /
                                    ("association_matrix_" + std::string(to_string(matrix.scenario_id)) +
                                     "_seed1.csv")).string(),
                                   csv);
                    wrote_matrix_example = true;
                }
            }
            if (opt.attention) {
                std::vector<std::vector<double>> shares;
                for (int w = 0; w < matrix.n_windows(); ++w)
                    shares.push_back(agent_l1_profile(matrix, w).shares);
                const AttentionResult att = attention_points(shares, opt.eta);
                for (double f : att.attention_fraction)
                    attention_by_scenario[scenario].push_back(f);
                if (matrix.seed == 1 && scenario == 0) {
                    std::string csv;
                    for (const auto& row : att.membership) {
                        for (std::size_t i = 0; i < row.size(); ++i) {
                            if (i) csv += ',';
                            csv += row[i] ? '1' : '0';
                        }
                        csv += '\n';
                    }
                    write_artifact(manifest,
                                   (fs::path(opt.out_dir) / "attention_membership_S1_seed1.csv")
                                       .string(),
                                   csv);
                }
            }
        }

        if (opt.associate) {
            std::string csv = "scenario,max,min,range\n";
            for (const auto& [scenario, values] : association_by_scenario) {
                const SummaryStats st = summarize_percent(values);
                csv += std::string(to_string(static_cast<ScenarioId>(scenario))) + "," +
                       format_double_fixed(st.max, 2) + "," + format_double_fixed(st.min, 2) +
                       "," + format_double_fixed(st.range, 2) + "\n";
            }
            write_artifact(manifest, (fs::path(opt.out_dir) / "association_stats.csv").string(),
                           csv);
            std::cout << "association stats written\n";
        }
        if (opt.attention) {
            std::string csv = "scenario,mean,std_dev,range,max,min\n";
            for (const auto& [scenario, values] : attention_by_scenario) {
                const SummaryStats st = summarize_percent(values);
                csv += std::string(to_string(static_cast<ScenarioId>(scenario))) + "," +
                       format_double_fixed(st.mean, 2) + "," + format_double_fixed(st.std, 2) +
                       "," + format_double_fixed(st.range, 2) + "," +
                       format_double_fixed(st.max, 2) + "," + format_double_fixed(st.min, 2) +
                       "\n";
            }
            write_artifact(manifest, (fs::path(opt.out_dir) / "attention_stats.csv").string(),
                           csv);
            std::cout << "attention stats written\n";
        }
    }

    manifest.write((fs::path(opt.out_dir) / "pipeline.manifest.json").string());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"swarm shepherding simulation and information-marker analytics"};
    app.require_subcommand(1);

    // simulate
    auto* sim = app.add_subcommand("simulate", "run one scenario and write a trajectory CSV");
    std::string scenario_path, sim_out = "trajectory.csv";
    std::uint64_t sim_seed = 1;
    sim->add_option("scenario", scenario_path, "scenario JSON file")->required();
    sim->add_option("--seed", sim_seed, "RNG seed");
    sim->add_option("--out", sim_out, "output trajectory CSV");

    // markers
    auto* mk = app.add_subcommand("markers", "compute windowed markers from a trajectory CSV");
    std::string traj_path, mk_set = "42", mk_out = "features.csv";
    int mk_window = 20;
    double mk_overlap = 0.75;
    mk->add_option("trajectory", traj_path, "trajectory CSV file")->required();
    mk->add_option("--window", mk_window, "window size in ticks");
    mk->add_option("--overlap", mk_overlap, "window overlap fraction in (0,1)");
    mk->add_option("--set", mk_set, "marker set: 23, 42, or comma list (e.g. M1,M3)");
    mk->add_option("--out", mk_out, "output feature CSV");

    // pipeline
    PipelineOptions opt;
    auto* pl = app.add_subcommand("pipeline", "regenerate data and emit analysis reports");
    pl->add_option("--out-dir", opt.out_dir, "artifact directory");
    pl->add_option("--scenarios", opt.scenarios, "scenario ids or 'all'")->delimiter(',');
    pl->add_option("--seeds", opt.n_seeds, "seeds per scenario (1..N)");
    pl->add_option("--max-ticks", opt.max_ticks, "ticks per generated trajectory");
    pl->add_flag("--regenerate", opt.regenerate, "regenerate feature artifacts");
    pl->add_flag("--sweep", opt.run_sweep, "train across the 5x3 window grid");
    pl->add_option("--train", opt.train_target, "classification target: agent, swarm11, swarm2");
    pl->add_option("--ablate", opt.ablate, "ablation protocol: e1, e2 or both");
    pl->add_flag("--associate", opt.associate, "agent association analysis");
    pl->add_flag("--attention", opt.attention, "swarm attention point analysis");
    pl->add_option("--eta", opt.eta, "attention threshold in (0,1]");
    pl->add_option("--window", opt.window, "window size for non-sweep analyses");
    pl->add_option("--overlap", opt.overlap, "window overlap for non-sweep analyses");
    pl->add_option("--shuffle-seed", opt.shuffle_seed, "dataset shuffle / training seed");
    pl->add_option("--folds", opt.folds, "cross-validation folds");
    pl->add_option("--opt-budget", opt.opt_budget, "hyperparameter search trials");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (sim->parsed()) return cmd_simulate(scenario_path, sim_seed, sim_out);
        if (mk->parsed()) return cmd_markers(traj_path, mk_window, mk_overlap, mk_set, mk_out);
        if (pl->parsed()) return cmd_pipeline(opt);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const SchemaError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const MissingArtifactError& e) {
        std::cerr << "missing dependency: " << e.what() << "\n";
        return kExitMissing;
    } catch (const WindowError& e) {
        std::cerr << "window error: " << e.what() << "\n";
        return kExitData;
    } catch (const IoError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
