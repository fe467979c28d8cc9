#include "game/clustering.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "game/rng.hpp"

namespace game {

namespace {

double sq_dist(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

} // namespace

KmeansResult kmeans(const std::vector<std::vector<double>>& points, std::size_t k,
                    std::uint64_t seed) {
    if (points.empty()) throw std::invalid_argument("kmeans: no points");
    if (k == 0) throw std::invalid_argument("kmeans: k must be positive");
    const std::size_t n = points.size();
    const std::size_t dim = points.front().size();
    for (const auto& p : points)
        if (p.size() != dim) throw std::invalid_argument("kmeans: ragged points");

    KmeansResult res;
    res.assignments.assign(n, 0);
    res.cluster_sizes.assign(k, 0);

    if (n <= k) {
        res.centroids.assign(k, std::vector<double>(dim, 0.0));
        for (std::size_t i = 0; i < n; ++i) {
            res.assignments[i] = i;
            res.centroids[i] = points[i];
            res.cluster_sizes[i] = 1;
        }
        return res;
    }

    Rng rng(seed);

    // k-means++ seeding.
    std::vector<std::vector<double>> centroids;
    centroids.reserve(k);
    centroids.push_back(points[rng.uniform_index(n)]);
    std::vector<double> best_sq(n, std::numeric_limits<double>::infinity());
    while (centroids.size() < k) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            best_sq[i] = std::min(best_sq[i], sq_dist(points[i], centroids.back()));
            total += best_sq[i];
        }
        std::size_t pick = 0;
        if (total > 0.0) {
            const double target = rng.uniform() * total;
            double acc = 0.0;
            pick = n - 1;
            for (std::size_t i = 0; i < n; ++i) {
                acc += best_sq[i];
                if (acc >= target) {
                    pick = i;
                    break;
                }
            }
        } else {
            pick = rng.uniform_index(n);  // all points identical
        }
        centroids.push_back(points[pick]);
    }

    std::vector<std::size_t> assign(n, k);  // force first-iteration change
    std::vector<std::size_t> sizes(k, 0);
    for (int iter = 0; iter < 100; ++iter) {
        bool changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t best = 0;
            double bd = sq_dist(points[i], centroids[0]);
            for (std::size_t c = 1; c < k; ++c) {
                const double d = sq_dist(points[i], centroids[c]);
                if (d < bd) {
                    bd = d;
                    best = c;
                }
            }
            if (assign[i] != best) {
                assign[i] = best;
                changed = true;
            }
        }
        if (!changed) break;

        sizes.assign(k, 0);
        for (std::size_t i = 0; i < n; ++i) ++sizes[assign[i]];

        // Re-seed any empty cluster with the point farthest from its centroid.
        for (std::size_t c = 0; c < k; ++c) {
            if (sizes[c] > 0) continue;
            std::size_t far = 0;
            double far_d = -1.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (sizes[assign[i]] <= 1) continue;  // do not empty another cluster
                const double d = sq_dist(points[i], centroids[assign[i]]);
                if (d > far_d) {
                    far_d = d;
                    far = i;
                }
            }
            if (far_d < 0.0) continue;
            --sizes[assign[far]];
            assign[far] = c;
            sizes[c] = 1;
            centroids[c] = points[far];
            changed = true;
        }

        for (std::size_t c = 0; c < k; ++c) {
            if (sizes[c] == 0) continue;
            std::vector<double> mean(dim, 0.0);
            for (std::size_t i = 0; i < n; ++i) {
                if (assign[i] != c) continue;
                for (std::size_t d = 0; d < dim; ++d) mean[d] += points[i][d];
            }
            for (double& v : mean) v /= static_cast<double>(sizes[c]);
            centroids[c] = std::move(mean);
        }
    }

    sizes.assign(k, 0);
    for (std::size_t i = 0; i < n; ++i) ++sizes[assign[i]];
    res.assignments = std::move(assign);
    res.centroids = std::move(centroids);
    res.cluster_sizes = std::move(sizes);
    return res;
}

std::vector<BehaviorVector> cvt_centroids_from_samples(
    const std::vector<BehaviorVector>& samples, std::size_t n_cell, std::uint64_t seed) {
    if (samples.size() < n_cell)
        throw std::invalid_argument("fixed CVT needs at least n_cell sample behaviors");
    const KmeansResult km = kmeans_behaviors(samples, n_cell, seed);
    std::vector<BehaviorVector> centroids;
    centroids.reserve(n_cell);
    for (const auto& c : km.centroids)
        centroids.push_back(BehaviorVector{c, samples.front().kind});
    return centroids;
}

KmeansResult kmeans_behaviors(const std::vector<BehaviorVector>& behaviors,
                              std::size_t k, std::uint64_t seed) {
    if (behaviors.empty()) throw std::invalid_argument("kmeans: no behaviors");
    std::vector<std::vector<double>> pts;
    pts.reserve(behaviors.size());
    const bool normalize = behaviors.front().kind == DistanceKind::Cosine;
    for (const auto& b : behaviors) {
        std::vector<double> p = b.values;
        if (normalize) {
            double sq = 0.0;
            for (double v : p) sq += v * v;
            const double norm = std::sqrt(sq);
            if (norm > 0.0)
                for (double& v : p) v /= norm;
        }
        pts.push_back(std::move(p));
    }
    return kmeans(pts, k, seed);
}

} // namespace game
