#include "game/archive.hpp"

#include <cmath>
#include <stdexcept>

#include "game/clustering.hpp"

namespace game {

std::size_t nearest_centroid(const std::vector<BehaviorVector>& centroids,
                             const BehaviorVector& b) {
    if (centroids.empty()) throw std::logic_error("nearest_centroid: no centroids");
    std::size_t best = 0;
    double best_d = distance(centroids[0], b);
    for (std::size_t i = 1; i < centroids.size(); ++i) {
        const double d = distance(centroids[i], b);
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    return best;
}

GrowingArchive::GrowingArchive(std::size_t capacity, DistanceKind kind, FitnessMode mode)
    : capacity_(capacity), kind_(kind), mode_(mode) {
    if (capacity == 0) throw std::invalid_argument("archive capacity must be positive");
}

double GrowingArchive::dist(const BehaviorVector& a, const BehaviorVector& b) const {
    distance_calls_.fetch_add(1, std::memory_order_relaxed);
    return distance(a, b);
}

void GrowingArchive::check_input(const BehaviorVector& b) const {
    if (b.kind != kind_) throw std::invalid_argument("archive distance kind mismatch");
    validate_behavior(b);
    if (!cells_.empty() && b.dim() != cells_.front().centroid.dim())
        throw std::invalid_argument("behavior dimension mismatch at archive update");
}

std::size_t GrowingArchive::find_cell(const BehaviorVector& b) const {
    if (cells_.empty()) throw std::logic_error("find_cell on empty archive");
    std::size_t best = 0;
    double best_d = dist(cells_[0].centroid, b);
    for (std::size_t i = 1; i < cells_.size(); ++i) {
        const double d = dist(cells_[i].centroid, b);
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    return best;
}

double GrowingArchive::min_pairwise_distance() const {
    double dmin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < cells_.size(); ++i)
        for (std::size_t j = i + 1; j < cells_.size(); ++j)
            dmin = std::min(dmin, distance(cells_[i].centroid, cells_[j].centroid));
    return dmin;
}

UpdateResult GrowingArchive::update(std::uint64_t solution_id, const Fitness& fitness,
                                    const BehaviorVector& behavior) {
    check_input(behavior);
    if (!std::isfinite(fitness.primary))
        throw std::invalid_argument("non-finite fitness at archive update");

    const std::size_t n = cells_.size();

    // Distances from the candidate behavior to every centroid (n calls).
    std::vector<double> to_centroids(n);
    std::size_t closest = 0;
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        to_centroids[i] = dist(cells_[i].centroid, behavior);
        if (to_centroids[i] < d) {
            d = to_centroids[i];
            closest = i;
        }
    }

    if (n < capacity_) {
        // Fill phase. A behavior identical to an existing centroid competes
        // for that cell instead of spawning a duplicate centroid, which would
        // break the one-cell-per-behavior mapping.
        if (n > 0 && d == 0.0) {
            if (fitness_beats(fitness, cells_[closest].elite.fitness, mode_)) {
                cells_[closest].elite = Elite{solution_id, fitness, behavior};
                return {UpdateResult::ReplacedElite, closest};
            }
            return {UpdateResult::Rejected, closest};
        }
        Elite e{solution_id, fitness, behavior};
        cells_.push_back(Cell{behavior, e, e});
        return {UpdateResult::AddedNewCell, n};
    }

    // Full archive: pairwise centroid distances (n(n-1)/2 calls).
    std::vector<std::vector<double>> pair(n, std::vector<double>(n, 0.0));
    double d_min = std::numeric_limits<double>::infinity();
    std::size_t pj = 0, pk = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double pd = dist(cells_[i].centroid, cells_[j].centroid);
            pair[i][j] = pair[j][i] = pd;
            if (pd < d_min) {
                d_min = pd;
                pj = i;
                pk = j;
            }
        }
    }

    if (d > d_min) {
        // Growth: drop the member of the closest pair that sits closer to the
        // remaining centroids. Slot k is overwritten; on a tie (d_j == d_k)
        // that is the higher index of the pair, mirroring
        // "k <- j if d_j < d_k else k" applied before the write.
        double dj = std::numeric_limits<double>::infinity();
        double dk = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) {
            if (i != pj) dj = std::min(dj, pair[pj][i]);
            if (i != pk) dk = std::min(dk, pair[pk][i]);
        }
        const std::size_t removed = dj < dk ? pj : pk;

        Elite e{solution_id, fitness, behavior};
        cells_[removed] = Cell{behavior, e, e};

        // Repair holes. Before this update every elite mapped to its own
        // cell, and only centroid `removed` changed, so an elite can only
        // have been stolen by the new centroid (2 calls per cell).
        for (std::size_t i = 0; i < n; ++i) {
            if (i == removed) continue;
            const double to_new = dist(cells_[removed].centroid, cells_[i].elite.behavior);
            const double to_own = dist(cells_[i].centroid, cells_[i].elite.behavior);
            const bool stolen = to_new < to_own || (to_new == to_own && removed < i);
            if (stolen) cells_[i].elite = cells_[i].backup;
        }
        return {UpdateResult::GrewReplacedCell, removed};
    }

    if (fitness_beats(fitness, cells_[closest].elite.fitness, mode_)) {
        cells_[closest].elite = Elite{solution_id, fitness, behavior};
        return {UpdateResult::ReplacedElite, closest};
    }
    return {UpdateResult::Rejected, closest};
}

GrowingArchive GrowingArchive::from_cells(std::size_t capacity, DistanceKind kind,
                                          FitnessMode mode, std::vector<Cell> cells) {
    GrowingArchive a(capacity, kind, mode);
    if (cells.size() > capacity)
        throw std::invalid_argument("snapshot archive exceeds capacity");
    for (const Cell& c : cells) {
        if (c.backup.behavior != c.centroid)
            throw std::invalid_argument("snapshot cell backup not anchored to centroid");
        validate_behavior(c.centroid);
    }
    a.cells_ = std::move(cells);
    return a;
}

FixedCvtArchive::FixedCvtArchive(std::vector<BehaviorVector> centroids, FitnessMode mode)
    : centroids_(std::move(centroids)), mode_(mode) {
    if (centroids_.empty()) throw std::invalid_argument("fixed CVT archive needs centroids");
    kind_ = centroids_.front().kind;
    for (const auto& c : centroids_) validate_behavior(c);
    elites_.resize(centroids_.size());
}

std::size_t FixedCvtArchive::find_cell(const BehaviorVector& b) const {
    return nearest_centroid(centroids_, b);
}

std::size_t FixedCvtArchive::occupied() const {
    std::size_t n = 0;
    for (const auto& e : elites_)
        if (e) ++n;
    return n;
}

UpdateResult FixedCvtArchive::update(std::uint64_t solution_id, const Fitness& fitness,
                                     const BehaviorVector& behavior) {
    if (behavior.kind != kind_)
        throw std::invalid_argument("archive distance kind mismatch");
    validate_behavior(behavior);
    if (behavior.dim() != centroids_.front().dim())
        throw std::invalid_argument("behavior dimension mismatch at archive update");
    if (!std::isfinite(fitness.primary))
        throw std::invalid_argument("non-finite fitness at archive update");

    const std::size_t cell = find_cell(behavior);
    if (!elites_[cell]) {
        elites_[cell] = Elite{solution_id, fitness, behavior};
        return {UpdateResult::AddedNewCell, cell};
    }
    if (fitness_beats(fitness, elites_[cell]->fitness, mode_)) {
        elites_[cell] = Elite{solution_id, fitness, behavior};
        return {UpdateResult::ReplacedElite, cell};
    }
    return {UpdateResult::Rejected, cell};
}

FixedCvtArchive FixedCvtArchive::from_state(std::vector<BehaviorVector> centroids,
                                            FitnessMode mode,
                                            std::vector<std::optional<Elite>> elites) {
    FixedCvtArchive a(std::move(centroids), mode);
    if (elites.size() != a.centroids_.size())
        throw std::invalid_argument("snapshot elite count mismatch");
    a.elites_ = std::move(elites);
    return a;
}

FixedCvtArchive make_fixed_cvt(const std::vector<BehaviorVector>& sample_behaviors,
                               std::size_t n_cell, std::uint64_t seed, FitnessMode mode) {
    return FixedCvtArchive(cvt_centroids_from_samples(sample_behaviors, n_cell, seed), mode);
}

UpdateResult archive_update(TaskArchive& archive, std::uint64_t solution_id,
                            const Fitness& fitness, const BehaviorVector& behavior) {
    return std::visit(
        [&](auto& a) { return a.update(solution_id, fitness, behavior); }, archive);
}

std::size_t archive_elite_count(const TaskArchive& archive) {
    if (const auto* g = std::get_if<GrowingArchive>(&archive)) return g->size();
    return std::get<FixedCvtArchive>(archive).occupied();
}

std::vector<const Elite*> archive_elites(const TaskArchive& archive) {
    std::vector<const Elite*> out;
    if (const auto* g = std::get_if<GrowingArchive>(&archive)) {
        out.reserve(g->size());
        for (const Cell& c : g->cells()) out.push_back(&c.elite);
    } else {
        const auto& f = std::get<FixedCvtArchive>(archive);
        for (const auto& e : f.elites())
            if (e) out.push_back(&*e);
    }
    return out;
}

} // namespace game
