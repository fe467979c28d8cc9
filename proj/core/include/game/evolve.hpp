#ifndef GAME_EVOLVE_HPP
#define GAME_EVOLVE_HPP

#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "game/archive.hpp"
#include "game/clustering.hpp"
#include "game/descriptor.hpp"
#include "game/domain.hpp"
#include "game/tournament.hpp"

namespace game {

enum class ArchiveMode : std::uint8_t { Growing, FixedCvt };

std::string to_string(ArchiveMode mode);
ArchiveMode archive_mode_from_string(const std::string& name);

struct GameConfig {
    std::uint32_t n_gen = 6;
    std::uint32_t n_task = 10;
    std::uint32_t n_cell = 8;
    std::uint32_t n_budget = 1500;
    // Random search until this many elites exist across all task archives.
    // Values above n_task * n_cell can never be reached, which turns the run
    // into the pure random-sampling baseline.
    std::uint64_t n_init = 100;
    FitnessMode fitness_mode = FitnessMode::SingleObjective;
    ArchiveMode archive_mode = ArchiveMode::Growing;
    bool bootstrap_enabled = true;
    // Ablation: ignore fitness entirely, archives only ever grow on novelty.
    bool diversity_only = false;
    Side first_side = Side::Red;
    // Evaluations are generated and applied in fixed batches of this size, so
    // the worker count never changes results.
    std::uint32_t batch_size = 32;
    // Seeded duel samples per cell used to build the shared fixed-CVT
    // centroids at run initialization (FixedCvt mode only).
    std::uint32_t cvt_samples_per_cell = 5;
    DescriptorSpec descriptor;
    std::uint64_t master_seed = 1;

    bool operator==(const GameConfig&) const = default;

    void validate() const;  // throws std::invalid_argument
};

struct TaskSolution {
    std::uint64_t id = 0;
    Solution solution;
};

struct TaskSet {
    Side side = Side::Blue;
    std::vector<TaskSolution> solutions;  // exactly n_task entries in a run
};

struct BootstrapRecord {
    std::size_t task_index = 0;  // archive of the *new* task this record seeds
    std::uint64_t solution_id = 0;
    Solution solution;
    Fitness fitness;
    BehaviorVector behavior;
};

struct BootstrapSet {
    std::vector<BootstrapRecord> records;
};

struct LineageRecord {
    std::uint64_t solution_id = 0;
    std::vector<std::uint64_t> parent_ids;  // empty, one, or two (crossover)
    std::uint32_t generation = 0;           // 0 = initial task sampling
    OpTag op = OpTag::Random;
    std::string payload;  // canonical solution encoding

    bool operator==(const LineageRecord&) const = default;
};

struct GenerationRecord {
    std::uint32_t index = 0;  // 1-based
    Side side = Side::Red;    // side evolved this generation
    TaskSet tasks_used;       // opposing tasks evolved against
    TaskSet tasks_selected;   // new tasks picked from this generation's elites
    std::vector<TaskArchive> archives;
    // Rows = tasks_selected, cols = tasks_used (the previous tasks).
    TournamentMatrix bootstrap_matrix;
    std::uint64_t evaluations = 0;
};

struct GenerationsLog {
    GameConfig config;
    std::string domain_name;
    TaskSet initial_tasks;
    std::vector<GenerationRecord> generations;
    std::vector<LineageRecord> lineage;
    std::uint64_t id_counter = 0;
    std::uint64_t init_evaluations = 0;  // CVT centroid sampling, pre-budget
};

// Evaluation keys, used for external embeddings and replays:
//   inner-loop iteration i of generation g -> (g << 32) | i
//   tournament pair (r, c) after generation g -> (g << 32) | 2^31 | (r * n_task + c)
//   CVT initialization sample k -> k  (generation 0)
std::uint64_t eval_key_inner(std::uint32_t generation, std::uint32_t iteration);
std::uint64_t eval_key_tournament(std::uint32_t generation, std::uint32_t pair_index);

struct RunHooks {
    // Called after each generation is appended to the log.
    std::function<void(const GenerationsLog&, const GenerationRecord&)> on_generation;
    std::function<void(const std::string&)> progress;
};

// Alg-level operations ---------------------------------------------------------

// One inner-loop illumination: initializes one archive per task, replays the
// bootstrap, then spends exactly config.n_budget evaluations. `solutions`
// collects every candidate payload by id (parents are drawn from it).
std::vector<TaskArchive> run_mtmb(const TaskSet& tasks, Side side,
                                  const BootstrapSet& bootstrap, const GameConfig& config,
                                  const Domain& domain, std::uint32_t generation,
                                  std::uint64_t& id_counter,
                                  std::vector<LineageRecord>& lineage,
                                  std::unordered_map<std::uint64_t, Solution>& solutions,
                                  const std::vector<BehaviorVector>& cvt_centroids,
                                  const EmbeddingTable* external, std::size_t jobs);

// Clusters the elite union into n_task groups and keeps the fittest member of
// each (ties to the lowest id); deficits are filled with distinct random
// elites, then duplicates.
TaskSet select_tasks(const std::vector<TaskArchive>& archives, Side side,
                     std::uint32_t n_task, std::uint64_t seed, FitnessMode mode,
                     const std::unordered_map<std::uint64_t, Solution>& solutions);

// Evaluates all pairs between consecutive task sets. The matrix is always
// produced; the bootstrap set is empty when bootstrapping is disabled.
std::pair<TournamentMatrix, BootstrapSet> bootstrap_tournament(
    const TaskSet& new_tasks, const TaskSet& old_tasks, const GameConfig& config,
    const Domain& domain, std::uint32_t generation, const EmbeddingTable* external,
    std::size_t jobs);

// Full run (Alg-level outer loop). `stop_after` > 0 stops after that many
// generations (used to exercise resume).
GenerationsLog run_game(const GameConfig& config, const Domain& domain,
                        std::size_t jobs = 1, const RunHooks& hooks = {},
                        std::uint32_t stop_after = 0);

// Continues a partial log to completion (or to stop_after). The caller
// supplies the task set and bootstrap reconstructed from the last generation.
void continue_game(GenerationsLog& log, TaskSet tasks, BootstrapSet bootstrap,
                   const Domain& domain, std::size_t jobs, const RunHooks& hooks = {},
                   std::uint32_t stop_after = 0);

// Rebuilds the bootstrap set for the generation after `record` from its
// stored tournament matrix (mirrors what the engine fed forward).
BootstrapSet bootstrap_from_record(const GenerationRecord& record, const GameConfig& config,
                                   const Domain& domain);

// Side evolved at 1-based generation g.
Side generation_side(const GameConfig& config, std::uint32_t g);

} // namespace game

#endif
