#ifndef GAME_RUN_STORE_HPP
#define GAME_RUN_STORE_HPP

#include <string>
#include <vector>

#include "game/manifest.hpp"
#include "game/snapshot.hpp"

namespace game {

// Run directory layout:
//   <dir>/manifest.json   canonical effective manifest
//   <dir>/gen_0001.snap   per-generation snapshots
//   <dir>/metrics.csv     written on completion
//   <dir>/DONE            completion marker
std::string snapshot_path(const std::string& run_dir, std::uint32_t generation);

struct RunResult {
    std::string run_dir;
    std::uint32_t generations_completed = 0;
    bool done = false;
};

// Executes a run from a manifest into run_dir (created if needed); writes a
// snapshot after every generation. stop_after > 0 leaves the run resumable.
RunResult execute_run(const RunManifest& manifest, const std::string& run_dir,
                      std::size_t jobs, std::uint32_t stop_after = 0,
                      bool progress_to_stderr = true);

// Resumes an interrupted run directory to completion.
RunResult resume_run(const std::string& run_dir, std::size_t jobs,
                     bool progress_to_stderr = true);

// Reloads a completed (or partial) run into a log for analysis.
struct LoadedRun {
    RunManifest manifest;
    GenerationsLog log;
    std::unordered_map<std::uint64_t, std::string> payloads;
};

LoadedRun load_run(const std::string& run_dir);

} // namespace game

#endif
