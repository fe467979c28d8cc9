// Command-line front end: run, resume, tournament, metrics, project, replay,
// validate. Standard output carries machine-parsable key=value status lines;
// progress goes to standard error. Exit codes: 0 success, 2 usage error,
// 3 validation failure, 4 runtime failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "game/analysis.hpp"
#include "game/manifest.hpp"
#include "game/run_analysis.hpp"
#include "game/run_store.hpp"
#include "game/snapshot.hpp"

namespace fs = std::filesystem;
using namespace game;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitValidation = 3;
constexpr int kExitRuntime = 4;

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write: " + path);
    out << text;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int cmd_run(const std::string& manifest_path, const std::vector<std::string>& overrides,
            std::string out_dir, std::size_t jobs, std::uint32_t stop_after) {
    std::string text = read_text_file(manifest_path);
    if (!overrides.empty()) text = apply_overrides(text, overrides);
    const RunManifest manifest = parse_manifest(text);
    if (out_dir.empty()) out_dir = (fs::path("runs") / manifest.run_id).string();

    const RunResult res = execute_run(manifest, out_dir, jobs, stop_after);
    std::cout << "run_dir=" << res.run_dir << "\n";
    std::cout << "generations=" << res.generations_completed << "\n";
    std::cout << "status=" << (res.done ? "done" : "stopped") << "\n";
    return kExitOk;
}

int cmd_resume(const std::string& run_dir, std::size_t jobs) {
    const RunResult res = resume_run(run_dir, jobs);
    std::cout << "run_dir=" << res.run_dir << "\n";
    std::cout << "generations=" << res.generations_completed << "\n";
    std::cout << "status=" << (res.done ? "done" : "stopped") << "\n";
    return kExitOk;
}

void write_elo_csv(const std::string& path, const RunTournament& t, const EloTable& table) {
    std::string csv = "side,generation,task_index,solution_id,rating,matches\n";
    for (const auto& e : table.entries) {
        const auto& labels = e.side == Side::Red ? t.labels_red : t.labels_blue;
        const PoolLabel& l = labels.at(e.solution_id);
        csv += std::string(side_name(e.side)) + "," + std::to_string(l.generation) + "," +
               std::to_string(l.task_index) + "," + std::to_string(l.solution_id) + "," +
               fmt17(e.rating) + "," + std::to_string(e.matches) + "\n";
    }
    write_text_file(path, csv);
}

int cmd_tournament(const std::vector<std::string>& run_dirs, const std::string& mode,
                   std::size_t top_k, std::optional<std::uint64_t> duel_seed,
                   std::string out_dir, std::size_t jobs, const std::string& embeddings) {
    EmbeddingTable table;
    const EmbeddingTable* external = nullptr;
    if (!embeddings.empty()) {
        table = read_external_embeddings(embeddings);
        external = &table;
    }

    if (mode == "intergen") {
        for (const std::string& dir : run_dirs) {
            const LoadedRun run = load_run(dir);
            const RunTournament t = intergen_tournament(run, jobs, duel_seed, external);
            const std::string base = out_dir.empty() ? dir : out_dir;
            fs::create_directories(base);
            const std::string suffix = duel_seed ? "_reseeded" : "";
            const std::string tpath =
                (fs::path(base) / ("tournament" + suffix + ".bin")).string();
            save_tournament(tpath, t);
            const EloTable elo_table = elo(t.matrix);
            write_elo_csv((fs::path(base) / ("elo" + suffix + ".csv")).string(), t,
                          elo_table);
            std::cout << "tournament=" << tpath << "\n";
            std::cout << "duels=" << t.matrix.entries.size() << "\n";
        }
        return kExitOk;
    }

    // topk
    if (out_dir.empty()) throw std::runtime_error("topk mode requires --out");
    std::vector<LoadedRun> runs;
    runs.reserve(run_dirs.size());
    for (const std::string& dir : run_dirs) runs.push_back(load_run(dir));
    std::vector<const LoadedRun*> ptrs;
    for (const auto& r : runs) ptrs.push_back(&r);

    const TopkTournament t = topk_tournament(ptrs, top_k, jobs, duel_seed);
    const EloTable elo_table = elo(t.matrix);
    fs::create_directories(out_dir);
    std::string csv = "run_id,side,solution_id,rating,matches\n";
    for (const auto& e : elo_table.entries) {
        const auto& labels = e.side == Side::Red ? t.labels_red : t.labels_blue;
        const PoolLabel& l = labels.at(e.solution_id);
        csv += l.run_id + "," + side_name(e.side) + "," + std::to_string(l.solution_id) +
               "," + fmt17(e.rating) + "," + std::to_string(e.matches) + "\n";
    }
    const std::string path = (fs::path(out_dir) / "elo_topk.csv").string();
    write_text_file(path, csv);
    std::cout << "elo=" << path << "\n";
    std::cout << "duels=" << t.matrix.entries.size() << "\n";
    return kExitOk;
}

int cmd_metrics(const std::string& run_dir, std::string out_dir) {
    const LoadedRun run = load_run(run_dir);
    const std::string tpath = (fs::path(run_dir) / "tournament.bin").string();
    if (!fs::exists(tpath))
        throw std::runtime_error("missing tournament input " + tpath +
                                 " (run `game tournament` first)");
    const RunTournament t = load_tournament(tpath);
    const auto metrics = compute_generation_metrics(run, t);

    if (out_dir.empty()) out_dir = run_dir;
    fs::create_directories(out_dir);
    std::string csv = "run_id,generation,metric,value\n";
    for (const auto& gm : metrics) {
        const std::string prefix =
            run.manifest.run_id + "," + std::to_string(gm.generation) + ",";
        csv += prefix + "coverage," + fmt17(gm.coverage) + "\n";
        csv += prefix + "qd_score," + fmt17(gm.qd_score) + "\n";
        csv += prefix + "entropy," + fmt17(gm.entropy) + "\n";
        csv += prefix + "ranking_novelty," + fmt17(gm.ranking_novelty) + "\n";
        csv += prefix + "solution_size_mean," + fmt17(gm.solution_size_mean) + "\n";
    }
    const std::string path = (fs::path(out_dir) / "analysis.csv").string();
    write_text_file(path, csv);
    std::cout << "metrics=" << path << "\n";
    return kExitOk;
}

int cmd_project(const std::vector<std::string>& run_dirs, const std::string& out_dir,
                std::size_t grid_n) {
    std::vector<RunTournament> tournaments;
    for (const std::string& dir : run_dirs) {
        const std::string tpath = (fs::path(dir) / "tournament.bin").string();
        if (!fs::exists(tpath))
            throw std::runtime_error("missing tournament input " + tpath +
                                     " (run `game tournament` first)");
        tournaments.push_back(load_tournament(tpath));
    }
    std::vector<const RunTournament*> ptrs;
    for (const auto& t : tournaments) ptrs.push_back(&t);
    const PooledProjection pool = pooled_projection(ptrs, grid_n);

    fs::create_directories(out_dir);
    std::string summary = "run_id,coverage,qd_score,occupied_bins\n";
    for (const ProjectedRun& pr : pool.runs) {
        summary += pr.run_id + "," + fmt17(pr.score.coverage) + "," +
                   fmt17(pr.score.qd_score) + "," + std::to_string(pr.score.occupied_bins) +
                   "\n";
        std::string points = "behavior_key,pc1,pc2,fitness\n";
        for (std::size_t i = 0; i < pr.xs.size(); ++i)
            points += pr.behavior_keys[i] + "," + fmt17(pr.xs[i]) + "," + fmt17(pr.ys[i]) +
                      "," + fmt17(pr.fitnesses[i]) + "\n";
        write_text_file((fs::path(out_dir) / (pr.run_id + "_projection.csv")).string(),
                        points);
    }
    const std::string spath = (fs::path(out_dir) / "projection_summary.csv").string();
    write_text_file(spath, summary);
    std::cout << "summary=" << spath << "\n";
    std::cout << "explained_variance=" << fmt17(pool.pca.explained1) << ","
              << fmt17(pool.pca.explained2) << "\n";
    return kExitOk;
}

// Solution reference "G:T" = generation G's selected task T (G = 0 for the
// initial task set).
std::pair<std::uint32_t, std::uint32_t> parse_ref(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("solution reference must be GEN:TASK, got " + text);
    return {static_cast<std::uint32_t>(std::stoul(text.substr(0, colon))),
            static_cast<std::uint32_t>(std::stoul(text.substr(colon + 1)))};
}

const TaskSolution& resolve_ref(const LoadedRun& run, std::uint32_t gen, std::uint32_t task,
                                Side expect_side) {
    const TaskSet* set = nullptr;
    if (gen == 0) {
        set = &run.log.initial_tasks;
    } else {
        for (const auto& rec : run.log.generations)
            if (rec.index == gen) set = &rec.tasks_selected;
    }
    if (set == nullptr)
        throw std::runtime_error("generation not in run: " + std::to_string(gen));
    if (set->side != expect_side)
        throw std::runtime_error("generation " + std::to_string(gen) + " holds " +
                                 side_name(set->side) + " solutions, not " +
                                 side_name(expect_side));
    if (task >= set->solutions.size())
        throw std::runtime_error("task index out of range: " + std::to_string(task));
    return set->solutions[task];
}

int cmd_replay(const std::string& run_dir, const std::string& red_ref,
               const std::string& blue_ref, const std::string& out_path,
               std::optional<std::uint64_t> duel_seed) {
    const LoadedRun run = load_run(run_dir);
    auto domain = make_domain(run.manifest);
    if (duel_seed) domain = domain->with_duel_seed(*duel_seed);

    const auto [rg, rt] = parse_ref(red_ref);
    const auto [bg, bt] = parse_ref(blue_ref);
    const TaskSolution& red = resolve_ref(run, rg, rt, Side::Red);
    const TaskSolution& blue = resolve_ref(run, bg, bt, Side::Blue);

    const DuelOutcome out = domain->evaluate(red.solution, blue.solution);
    save_trace(out_path, trace_from_outcome(out));
    std::cout << "trace=" << out_path << "\n";
    std::cout << "fitness_red=" << fmt17(out.fitness_red) << "\n";
    std::cout << "fitness_blue=" << fmt17(out.fitness_blue) << "\n";
    return kExitOk;
}

int cmd_validate(const std::vector<std::string>& paths) {
    int violations = 0;
    for (const std::string& path : paths) {
        std::vector<std::string> issues;
        try {
            if (path.ends_with(".json")) {
                load_manifest_file(path);
            } else if (path.ends_with(".snap")) {
                // The snapshot header names its domain; probe both decoders.
                SnapshotData data;
                bool loaded = false;
                for (const char* kind : {"pusher", "skirmish"}) {
                    RunManifest probe;
                    probe.domain_kind = kind;
                    try {
                        data = load_snapshot(path, *make_domain(probe));
                        loaded = true;
                        break;
                    } catch (const std::runtime_error& e) {
                        const std::string msg = e.what();
                        if (msg.find("does not match") == std::string::npos) throw;
                    }
                }
                if (!loaded) throw std::runtime_error("unknown snapshot domain");
                issues = validate_snapshot_invariants(data);
            } else if (path.ends_with(".gemb")) {
                read_external_embeddings(path);
            } else if (path.ends_with(".trace")) {
                load_trace(path);
            } else if (path.ends_with(".bin")) {
                load_tournament(path);
            } else {
                throw std::runtime_error(
                    "unknown artifact type (expect .json/.snap/.gemb/.trace/.bin)");
            }
        } catch (const std::exception& e) {
            issues.push_back(e.what());
        }
        if (issues.empty()) {
            std::cout << "valid=" << path << "\n";
        } else {
            for (const auto& issue : issues)
                std::cout << "violation=" << path << ": " << issue << "\n";
            ++violations;
        }
    }
    return violations == 0 ? kExitOk : kExitValidation;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coevolutionary quality-diversity engine"};
    app.require_subcommand(1);

    std::size_t jobs = 1;
    if (const char* env = std::getenv("GAME_JOBS")) {
        const auto v = std::strtoull(env, nullptr, 10);
        if (v > 0) jobs = v;
    }

    auto* run = app.add_subcommand("run", "Execute a run from a manifest");
    std::string run_manifest, run_out;
    std::vector<std::string> run_sets;
    std::uint32_t stop_after = 0;
    run->add_option("--manifest", run_manifest, "Manifest JSON path")->required();
    run->add_option("--set", run_sets, "Override manifest keys (dotted.path=value)");
    run->add_option("--out", run_out, "Run directory (default runs/<run_id>)");
    run->add_option("--jobs", jobs, "Parallel evaluation workers");
    run->add_option("--stop-after", stop_after, "Stop after N generations (resumable)");

    auto* resume = app.add_subcommand("resume", "Resume an interrupted run");
    std::string resume_dir;
    resume->add_option("--run", resume_dir, "Run directory")->required();
    resume->add_option("--jobs", jobs, "Parallel evaluation workers");

    auto* tour =
        app.add_subcommand("tournament", "Evaluate stored solutions against each other");
    std::vector<std::string> tour_runs;
    std::string tour_mode = "intergen", tour_out, tour_embeddings;
    std::size_t tour_topk = 10;
    std::uint64_t tour_seed = 0;
    tour->add_option("--run", tour_runs, "Run directory (repeatable)")->required();
    tour->add_option("--mode", tour_mode, "intergen | topk")
        ->check(CLI::IsMember({"intergen", "topk"}));
    tour->add_option("--top-k", tour_topk, "Solutions per side per run (topk mode)");
    auto* tour_seed_opt =
        tour->add_option("--duel-seed", tour_seed, "Override the domain duel seed");
    tour->add_option("--out", tour_out, "Output directory");
    tour->add_option("--jobs", jobs, "Parallel evaluation workers");
    tour->add_option("--embeddings", tour_embeddings, "External embeddings file (GEMB)");

    auto* metrics = app.add_subcommand("metrics", "Per-generation analysis metrics");
    std::string metrics_run, metrics_out;
    metrics->add_option("--run", metrics_run, "Run directory")->required();
    metrics->add_option("--out", metrics_out, "Output directory (default run dir)");

    auto* project = app.add_subcommand("project", "Pooled 2-D projection across runs");
    std::vector<std::string> project_runs;
    std::string project_out;
    std::size_t grid_n = 100;
    project->add_option("--run", project_runs, "Run directory (repeatable)")->required();
    project->add_option("--out", project_out, "Output directory")->required();
    project->add_option("--grid", grid_n, "Grid resolution per axis");

    auto* replay =
        app.add_subcommand("replay", "Re-evaluate one stored duel into a trace file");
    std::string replay_run, replay_red, replay_blue, replay_out;
    std::uint64_t replay_seed = 0;
    replay->add_option("--run", replay_run, "Run directory")->required();
    replay->add_option("--red", replay_red, "Red solution reference GEN:TASK")->required();
    replay->add_option("--blue", replay_blue, "Blue solution reference GEN:TASK")->required();
    replay->add_option("--out", replay_out, "Trace output path")->required();
    auto* replay_seed_opt =
        replay->add_option("--duel-seed", replay_seed, "Override the domain duel seed");

    auto* validate = app.add_subcommand("validate", "Check artifact files and invariants");
    std::vector<std::string> validate_paths;
    validate->add_option("--path", validate_paths, "Artifact path (repeatable)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*run) return cmd_run(run_manifest, run_sets, run_out, jobs, stop_after);
        if (*resume) return cmd_resume(resume_dir, jobs);
        if (*tour)
            return cmd_tournament(tour_runs, tour_mode, tour_topk,
                                  tour_seed_opt->count()
                                      ? std::optional<std::uint64_t>(tour_seed)
                                      : std::nullopt,
                                  tour_out, jobs, tour_embeddings);
        if (*metrics) return cmd_metrics(metrics_run, metrics_out);
        if (*project) return cmd_project(project_runs, project_out, grid_n);
        if (*replay)
            return cmd_replay(replay_run, replay_red, replay_blue, replay_out,
                              replay_seed_opt->count()
                                  ? std::optional<std::uint64_t>(replay_seed)
                                  : std::nullopt);
        if (*validate) return cmd_validate(validate_paths);
    } catch (const std::invalid_argument& e) {
        std::cout << "error=" << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cout << "error=" << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitUsage;
}
