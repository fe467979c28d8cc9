#include "game/run_store.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace game {

namespace fs = std::filesystem;

std::string snapshot_path(const std::string& run_dir, std::uint32_t generation) {
    char name[32];
    std::snprintf(name, sizeof(name), "gen_%04u.snap", generation);
    return (fs::path(run_dir) / name).string();
}

namespace {

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write: " + path);
    out << text;
}

RunHooks make_hooks(const std::string& run_dir, bool progress_to_stderr) {
    RunHooks hooks;
    hooks.on_generation = [run_dir](const GenerationsLog& log, const GenerationRecord& rec) {
        save_snapshot(snapshot_path(run_dir, rec.index), log, log.generations.size() - 1);
    };
    if (progress_to_stderr)
        hooks.progress = [](const std::string& msg) { std::cerr << msg << "\n"; };
    return hooks;
}

void finalize(const GenerationsLog& log, const RunManifest& manifest,
              const std::string& run_dir) {
    export_metrics(log, manifest.run_id, (fs::path(run_dir) / "metrics.csv").string());
    write_text((fs::path(run_dir) / "DONE").string(), "ok\n");
}

} // namespace

RunResult execute_run(const RunManifest& manifest, const std::string& run_dir,
                      std::size_t jobs, std::uint32_t stop_after,
                      bool progress_to_stderr) {
    fs::create_directories(run_dir);
    write_text((fs::path(run_dir) / "manifest.json").string(), serialize_manifest(manifest));

    const auto domain = make_domain(manifest);
    GenerationsLog log = run_game(manifest.config, *domain, jobs,
                                  make_hooks(run_dir, progress_to_stderr), stop_after);

    RunResult res;
    res.run_dir = run_dir;
    res.generations_completed = static_cast<std::uint32_t>(log.generations.size());
    res.done = res.generations_completed == manifest.config.n_gen;
    if (res.done) finalize(log, manifest, run_dir);
    return res;
}

LoadedRun load_run(const std::string& run_dir) {
    LoadedRun lr;
    lr.manifest = load_manifest_file((fs::path(run_dir) / "manifest.json").string());
    const auto domain = make_domain(lr.manifest);

    lr.log.config = lr.manifest.config;
    lr.log.domain_name = domain->name();

    for (std::uint32_t g = 1; g <= lr.manifest.config.n_gen; ++g) {
        const std::string path = snapshot_path(run_dir, g);
        if (!fs::exists(path)) break;
        SnapshotData d = load_snapshot(path, *domain);
        if (d.record.index != g)
            throw std::runtime_error("snapshot " + path + " has generation " +
                                     std::to_string(d.record.index));
        if (g == 1) lr.log.initial_tasks = d.record.tasks_used;
        lr.log.id_counter = d.id_counter;
        lr.log.lineage.insert(lr.log.lineage.end(), d.lineage_slice.begin(),
                              d.lineage_slice.end());
        lr.payloads.merge(d.payloads);
        lr.log.generations.push_back(std::move(d.record));
    }
    if (lr.log.generations.empty())
        throw std::runtime_error("no snapshots found in " + run_dir);
    return lr;
}

RunResult resume_run(const std::string& run_dir, std::size_t jobs,
                     bool progress_to_stderr) {
    LoadedRun lr = load_run(run_dir);
    const auto domain = make_domain(lr.manifest);

    RunResult res;
    res.run_dir = run_dir;
    if (lr.log.generations.size() >= lr.manifest.config.n_gen) {
        res.generations_completed = static_cast<std::uint32_t>(lr.log.generations.size());
        res.done = true;
        if (!fs::exists(fs::path(run_dir) / "DONE")) finalize(lr.log, lr.manifest, run_dir);
        return res;
    }

    const GenerationRecord& last = lr.log.generations.back();
    TaskSet tasks = last.tasks_selected;
    BootstrapSet bootstrap = bootstrap_from_record(last, lr.manifest.config, *domain);

    continue_game(lr.log, std::move(tasks), std::move(bootstrap), *domain, jobs,
                  make_hooks(run_dir, progress_to_stderr));

    res.generations_completed = static_cast<std::uint32_t>(lr.log.generations.size());
    res.done = res.generations_completed == lr.manifest.config.n_gen;
    if (res.done) finalize(lr.log, lr.manifest, run_dir);
    return res;
}

} // namespace game
