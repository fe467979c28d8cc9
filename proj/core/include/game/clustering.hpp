#ifndef GAME_CLUSTERING_HPP
#define GAME_CLUSTERING_HPP

#include <cstdint>
#include <vector>

#include "game/behavior_vector.hpp"

namespace game {

struct KmeansResult {
    std::vector<std::size_t> assignments;        // one per input point
    std::vector<std::vector<double>> centroids;  // k rows (empty clusters keep last centroid)
    std::vector<std::size_t> cluster_sizes;
};

// k-means++ seeding followed by Lloyd's iterations until assignments
// stabilize (or 100 iterations). Deterministic for a given seed. Empty
// clusters are re-seeded with the point farthest from its current centroid.
// With fewer points than k, each point becomes its own cluster and the
// remaining clusters stay empty.
KmeansResult kmeans(const std::vector<std::vector<double>>& points, std::size_t k,
                    std::uint64_t seed);

// Spherical variant used for cosine behaviors: inputs are L2-normalized, then
// Euclidean k-means applies.
KmeansResult kmeans_behaviors(const std::vector<BehaviorVector>& behaviors,
                              std::size_t k, std::uint64_t seed);

// Centroids for a fixed-CVT archive: k-means over sample behaviors with
// k = n_cell. Throws if there are fewer samples than cells.
std::vector<BehaviorVector> cvt_centroids_from_samples(
    const std::vector<BehaviorVector>& samples, std::size_t n_cell, std::uint64_t seed);

} // namespace game

#endif
