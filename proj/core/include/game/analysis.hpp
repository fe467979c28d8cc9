#ifndef GAME_ANALYSIS_HPP
#define GAME_ANALYSIS_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "game/evolve.hpp"
#include "game/tournament.hpp"

namespace game {

// --- Round robin ------------------------------------------------------------

// Evaluates every (a, b) pair once. Rows take side_a; evaluation goes through
// the domain's shared-seed policy.
TournamentMatrix round_robin(const TaskSet& set_a, const TaskSet& set_b,
                             const GameConfig& config, const Domain& domain,
                             const EmbeddingTable* external = nullptr,
                             std::size_t jobs = 1);

// --- ELO ----------------------------------------------------------------------

struct EloConfig {
    double initial = 1000.0;
    double k_factor = 32.0;
    std::uint32_t epochs = 10;
    std::uint64_t seed = 0;
};

struct EloEntry {
    std::uint64_t solution_id = 0;
    Side side = Side::Red;
    double rating = 0.0;
    std::uint32_t matches = 0;
};

struct EloTable {
    std::vector<EloEntry> entries;  // rows (side_a) first, then columns

    double rating_of(std::uint64_t id, Side side) const;
};

// Win = strictly higher fitness, exact tie = draw. `epochs` shuffled passes
// over all matches with the standard update; updates are zero-sum so the mean
// rating stays at `initial`.
EloTable elo(const TournamentMatrix& matrix, const EloConfig& config = {});

// Merged variant over several matrices sharing a solution universe; entries
// are keyed by (side, solution_id) pairs in first-seen order.
EloTable elo_multi(const std::vector<const TournamentMatrix*>& matrices,
                   const EloConfig& config = {});

// --- PCA -----------------------------------------------------------------------

struct PcaProjection {
    std::vector<double> component1;  // unit norm
    std::vector<double> component2;  // unit norm, orthogonal to component1
    std::vector<double> mean;
    std::vector<double> xs;  // per-behavior coordinates
    std::vector<double> ys;
    double explained1 = 0.0;  // fraction of total variance
    double explained2 = 0.0;
    bool degenerate = false;  // zero-variance input

    // Projects additional behaviors with the fitted components.
    std::pair<double, double> project(const std::vector<double>& v) const;
};

// Top-2 principal components via power iteration with deflation
// (tolerance 1e-10, <= 1000 iterations per component, seeded start vector).
PcaProjection pca2(const std::vector<BehaviorVector>& behaviors, std::uint64_t seed = 0);

// --- Coverage / QD-score ----------------------------------------------------------

struct CoverageResult {
    double coverage = 0.0;  // non-empty bins / grid_n^2
    double qd_score = 0.0;  // mean of per-bin max fitness over non-empty bins
    std::size_t occupied_bins = 0;
};

struct GridBounds {
    double min_x = 0.0, max_x = 0.0, min_y = 0.0, max_y = 0.0;
};

GridBounds bounding_box(const std::vector<double>& xs, const std::vector<double>& ys);

// Default bounds = bounding box of the given points; pass pooled bounds to
// compare runs on a shared grid.
CoverageResult coverage_qdscore(const std::vector<double>& xs, const std::vector<double>& ys,
                                const std::vector<double>& fitnesses, std::size_t grid_n = 100);
CoverageResult coverage_qdscore(const std::vector<double>& xs, const std::vector<double>& ys,
                                const std::vector<double>& fitnesses, std::size_t grid_n,
                                const GridBounds& bounds);

// --- Ranking novelty (PATA-EC analog) -----------------------------------------------

// A ranking vector is the ordering a solution induces over a fixed opposing
// reference set: opponent indices sorted by descending fitness against them,
// ties toward the lower opponent index.
using RankingVector = std::vector<std::uint32_t>;

RankingVector ranking_vector(const std::vector<double>& fitness_per_opponent);

// Fraction of ranking vectors in each generation unseen in the previous one.
// The first generation has no predecessor and reports 1.0.
std::vector<double> ranking_novelty(const std::vector<std::vector<RankingVector>>& per_generation);

// --- Scalar statistics ------------------------------------------------------------

// Spearman rank correlation with average-rank tie handling.
double spearman(const std::vector<double>& x, const std::vector<double>& y);

// Shannon entropy (bits) of an action-category count distribution.
double action_entropy(const std::array<std::uint32_t, kActionKinds>& counts);
double action_entropy(const std::vector<std::uint64_t>& counts);

// --- Lineage -----------------------------------------------------------------------

struct LineageStep {
    const LineageRecord* record;
    std::uint64_t annotation_parent = 0;  // crossover second parent, 0 if none
};

// Ancestor chain from the root to the given solution, following the first
// parent through crossovers.
std::vector<LineageStep> lineage_chain(const GenerationsLog& log, std::uint64_t solution_id);

} // namespace game

#endif
