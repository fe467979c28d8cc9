#ifndef GAME_RUN_ANALYSIS_HPP
#define GAME_RUN_ANALYSIS_HPP

#include <optional>
#include <string>
#include <vector>

#include "game/analysis.hpp"
#include "game/run_store.hpp"

namespace game {

// Label of one pooled-tournament participant. Generation 0 marks the initial
// random task set (used as the opposing pool for one-sided runs).
struct PoolLabel {
    std::uint32_t generation = 0;
    std::uint32_t task_index = 0;
    std::uint64_t solution_id = 0;  // id within its run
    std::string run_id;
};

// Intergenerational tournament of one run: every evolved red task set against
// every evolved blue task set (falling back to the initial tasks for a side
// with no evolved generations). Matrix ids are pool indices; labels map back.
struct RunTournament {
    std::string run_id;
    TournamentMatrix matrix;  // side_a = Red
    std::vector<PoolLabel> labels_red;
    std::vector<PoolLabel> labels_blue;
};

RunTournament intergen_tournament(const LoadedRun& run, std::size_t jobs,
                                  std::optional<std::uint64_t> duel_seed_override = {},
                                  const EmbeddingTable* external = nullptr);

void save_tournament(const std::string& path, const RunTournament& t);
RunTournament load_tournament(const std::string& path);

// Best k elites of one side by stored fitness (ties to the lowest id), taken
// from the archives of that side's last evolved generation.
struct SelectedElite {
    std::uint64_t solution_id = 0;
    Fitness fitness;
    std::string payload;
};
std::vector<SelectedElite> top_k_side(const LoadedRun& run, Side side, std::size_t k);

// Cross-run top-k round robin: red pool vs blue pool with synthetic ids.
struct TopkTournament {
    TournamentMatrix matrix;  // side_a = Red
    std::vector<PoolLabel> labels_red;
    std::vector<PoolLabel> labels_blue;
};
TopkTournament topk_tournament(const std::vector<const LoadedRun*>& runs, std::size_t k,
                               std::size_t jobs,
                               std::optional<std::uint64_t> duel_seed_override = {});

// Per-generation analysis metrics of one run, computed from its stored
// bootstrap matrices and its intergenerational tournament.
struct GenerationMetrics {
    std::uint32_t generation = 0;
    double coverage = 0.0;
    double qd_score = 0.0;
    double entropy = 0.0;
    double ranking_novelty = 0.0;
    double solution_size_mean = 0.0;
};
std::vector<GenerationMetrics> compute_generation_metrics(const LoadedRun& run,
                                                          const RunTournament& tournament,
                                                          std::size_t grid_n = 100);

// Pooled projection across runs: one PCA fitted on every tournament behavior,
// then each run projected and scored on the shared grid.
struct ProjectedRun {
    std::string run_id;
    std::vector<std::string> behavior_keys;
    std::vector<double> xs, ys, fitnesses;
    CoverageResult score;
};
struct PooledProjection {
    PcaProjection pca;
    GridBounds bounds;
    std::vector<ProjectedRun> runs;
};
PooledProjection pooled_projection(const std::vector<const RunTournament*>& tournaments,
                                   std::size_t grid_n = 100, std::uint64_t seed = 0);

} // namespace game

#endif
