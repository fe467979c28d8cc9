#ifndef GAME_ARCHIVE_HPP
#define GAME_ARCHIVE_HPP

#include <atomic>
#include <cstdint>
#include <limits>
#include <optional>
#include <variant>
#include <vector>

#include "game/behavior_vector.hpp"
#include "game/fitness.hpp"

namespace game {

struct Elite {
    std::uint64_t solution_id = 0;
    Fitness fitness;
    BehaviorVector behavior;

    bool operator==(const Elite&) const = default;
};

// One cell of a growing archive. The backup elite is the solution whose
// behavior created the centroid; its behavior equals the centroid exactly and
// it is reinstated when a centroid swap steals the cell's elite.
struct Cell {
    BehaviorVector centroid;
    Elite elite;
    Elite backup;

    bool operator==(const Cell&) const = default;
};

struct UpdateResult {
    enum Kind : std::uint8_t { AddedNewCell, GrewReplacedCell, ReplacedElite, Rejected };
    Kind kind = Rejected;
    // AddedNewCell/ReplacedElite: the affected cell. GrewReplacedCell: the
    // slot whose centroid was overwritten (the new solution lives there).
    std::size_t cell = 0;

    bool grew() const { return kind == AddedNewCell || kind == GrewReplacedCell; }
};

// Index of the centroid closest to b; ties broken toward the lowest index.
// Works for any list of centroids with a common distance kind.
std::size_t nearest_centroid(const std::vector<BehaviorVector>& centroids,
                             const BehaviorVector& b);

// Bounded unstructured archive whose centroids reposition as novelty arrives.
// A new behavior farther from every centroid than the closest centroid pair is
// apart replaces one member of that pair, so the minimum pairwise centroid
// distance grows monotonically.
class GrowingArchive {
public:
    GrowingArchive(std::size_t capacity, DistanceKind kind,
                   FitnessMode mode = FitnessMode::SingleObjective);

    // Value semantics despite the atomic instrumentation counter.
    GrowingArchive(const GrowingArchive& other)
        : capacity_(other.capacity_), kind_(other.kind_), mode_(other.mode_),
          cells_(other.cells_), distance_calls_(other.distance_call_count()) {}
    GrowingArchive(GrowingArchive&& other) noexcept
        : capacity_(other.capacity_), kind_(other.kind_), mode_(other.mode_),
          cells_(std::move(other.cells_)), distance_calls_(other.distance_call_count()) {}
    GrowingArchive& operator=(const GrowingArchive& other) {
        capacity_ = other.capacity_;
        kind_ = other.kind_;
        mode_ = other.mode_;
        cells_ = other.cells_;
        distance_calls_.store(other.distance_call_count(), std::memory_order_relaxed);
        return *this;
    }
    GrowingArchive& operator=(GrowingArchive&& other) noexcept {
        capacity_ = other.capacity_;
        kind_ = other.kind_;
        mode_ = other.mode_;
        cells_ = std::move(other.cells_);
        distance_calls_.store(other.distance_call_count(), std::memory_order_relaxed);
        return *this;
    }

    UpdateResult update(std::uint64_t solution_id, const Fitness& fitness,
                        const BehaviorVector& behavior);

    std::size_t find_cell(const BehaviorVector& b) const;

    const std::vector<Cell>& cells() const { return cells_; }
    std::size_t size() const { return cells_.size(); }
    std::size_t capacity() const { return capacity_; }
    DistanceKind distance_kind() const { return kind_; }
    FitnessMode fitness_mode() const { return mode_; }

    // Minimum distance over all centroid pairs; +inf with fewer than two cells.
    double min_pairwise_distance() const;

    // Distance evaluations performed so far (update + find_cell paths).
    std::uint64_t distance_call_count() const {
        return distance_calls_.load(std::memory_order_relaxed);
    }
    void reset_distance_call_count() { distance_calls_.store(0, std::memory_order_relaxed); }

    // Used by snapshot loading; validates invariants.
    static GrowingArchive from_cells(std::size_t capacity, DistanceKind kind,
                                     FitnessMode mode, std::vector<Cell> cells);

    bool operator==(const GrowingArchive& other) const {
        return capacity_ == other.capacity_ && kind_ == other.kind_ &&
               mode_ == other.mode_ && cells_ == other.cells_;
    }

private:
    double dist(const BehaviorVector& a, const BehaviorVector& b) const;
    void check_input(const BehaviorVector& b) const;

    std::size_t capacity_;
    DistanceKind kind_;
    FitnessMode mode_;
    std::vector<Cell> cells_;
    mutable std::atomic<std::uint64_t> distance_calls_{0};
};

// Ablation archive: centroids frozen at construction, cells may be empty,
// updates only ever replace elites within their fixed cell.
class FixedCvtArchive {
public:
    FixedCvtArchive(std::vector<BehaviorVector> centroids,
                    FitnessMode mode = FitnessMode::SingleObjective);

    UpdateResult update(std::uint64_t solution_id, const Fitness& fitness,
                        const BehaviorVector& behavior);

    std::size_t find_cell(const BehaviorVector& b) const;

    const std::vector<BehaviorVector>& centroids() const { return centroids_; }
    const std::vector<std::optional<Elite>>& elites() const { return elites_; }
    std::size_t capacity() const { return centroids_.size(); }
    std::size_t occupied() const;
    DistanceKind distance_kind() const { return kind_; }
    FitnessMode fitness_mode() const { return mode_; }

    static FixedCvtArchive from_state(std::vector<BehaviorVector> centroids,
                                      FitnessMode mode,
                                      std::vector<std::optional<Elite>> elites);

    bool operator==(const FixedCvtArchive& other) const {
        return centroids_ == other.centroids_ && elites_ == other.elites_ &&
               mode_ == other.mode_;
    }

private:
    std::vector<BehaviorVector> centroids_;
    std::vector<std::optional<Elite>> elites_;
    DistanceKind kind_ = DistanceKind::Euclidean;
    FitnessMode mode_;
};

// Builds the ablation archive from sample behaviors: k-means with k = n_cell
// (see clustering), centroids frozen thereafter.
FixedCvtArchive make_fixed_cvt(const std::vector<BehaviorVector>& sample_behaviors,
                               std::size_t n_cell, std::uint64_t seed,
                               FitnessMode mode = FitnessMode::SingleObjective);

// Per-task archive as used by the engine: either flavour behind one type.
using TaskArchive = std::variant<GrowingArchive, FixedCvtArchive>;

UpdateResult archive_update(TaskArchive& archive, std::uint64_t solution_id,
                            const Fitness& fitness, const BehaviorVector& behavior);
std::size_t archive_elite_count(const TaskArchive& archive);
// Elites in stable (cell-index) order; empty FixedCvt cells are skipped.
std::vector<const Elite*> archive_elites(const TaskArchive& archive);

} // namespace game

#endif
