#include <doctest.h>

#include <cmath>

#include "game/archive.hpp"
#include "game/rng.hpp"
#include "reference_archive.hpp"

using namespace game;

namespace {

BehaviorVector bv(std::vector<double> v, DistanceKind k = DistanceKind::Euclidean) {
    return BehaviorVector{std::move(v), k};
}

Fitness fit(double f) { return Fitness{f, 0}; }

} // namespace

TEST_CASE("cosine distance basics") {
    CHECK(distance(bv({1, 0}, DistanceKind::Cosine), bv({1, 0}, DistanceKind::Cosine)) ==
          doctest::Approx(0.0).epsilon(1e-15));
    CHECK(distance(bv({1, 0}, DistanceKind::Cosine), bv({0, 1}, DistanceKind::Cosine)) ==
          doctest::Approx(1.0));
    CHECK(distance(bv({1, 0}, DistanceKind::Cosine), bv({-1, 0}, DistanceKind::Cosine)) ==
          doctest::Approx(2.0));
    // Symmetry and self-distance on arbitrary vectors.
    const auto a = bv({0.3, -1.2, 4.0}, DistanceKind::Cosine);
    const auto b = bv({2.0, 0.5, -0.25}, DistanceKind::Cosine);
    CHECK(distance(a, b) == distance(b, a));
    CHECK(distance(a, a) == 0.0);
}

TEST_CASE("distance error cases") {
    CHECK_THROWS(distance(bv({1, 0}), bv({1, 0, 0})));
    CHECK_THROWS(distance(bv({0, 0}, DistanceKind::Cosine), bv({1, 0}, DistanceKind::Cosine)));
    CHECK_THROWS(validate_behavior(bv({1.0, std::nan("")})));
    CHECK_THROWS(validate_behavior(bv({0.0, 0.0}, DistanceKind::Cosine)));
}

TEST_CASE("find_cell matches a brute-force scan") {
    Rng rng(42);
    GrowingArchive a(64, DistanceKind::Euclidean);
    std::vector<std::vector<double>> centroids;
    for (int i = 0; i < 50; ++i) {
        std::vector<double> c(8);
        for (auto& v : c) v = rng.uniform() * 10.0 - 5.0;
        centroids.push_back(c);
        a.update(static_cast<std::uint64_t>(i + 1), fit(0.0), bv(c));
    }
    REQUIRE(a.size() == 50);
    for (int q = 0; q < 200; ++q) {
        std::vector<double> query(8);
        for (auto& v : query) v = rng.uniform() * 10.0 - 5.0;
        std::size_t best = 0;
        double bd = ref::ref_dist(centroids[0], query);
        for (std::size_t i = 1; i < centroids.size(); ++i) {
            const double d = ref::ref_dist(centroids[i], query);
            if (d < bd) {
                bd = d;
                best = i;
            }
        }
        CHECK(a.find_cell(bv(query)) == best);
    }
}

TEST_CASE("find_cell tie breaks toward the lowest index") {
    GrowingArchive a(2, DistanceKind::Euclidean);
    a.update(1, fit(0), bv({0, 0}));
    a.update(2, fit(0), bv({10, 0}));
    CHECK(a.find_cell(bv({1, 0})) == 0);
    CHECK(a.find_cell(bv({5, 0})) == 0);  // equidistant
}

TEST_CASE("update below capacity appends a cell") {
    GrowingArchive a(3, DistanceKind::Euclidean);
    const auto r = a.update(7, fit(0.5), bv({1, 0}));
    CHECK(r.kind == UpdateResult::AddedNewCell);
    CHECK(r.cell == 0);
    REQUIRE(a.size() == 1);
    CHECK(a.cells()[0].centroid == bv({1, 0}));
    CHECK(a.cells()[0].elite.fitness.primary == 0.5);
    CHECK(a.cells()[0].backup == a.cells()[0].elite);
}

TEST_CASE("growth replaces a member of the closest pair") {
    GrowingArchive a(3, DistanceKind::Euclidean);
    a.update(1, fit(0.3), bv({1, 0}));
    a.update(2, fit(0.4), bv({0, 1}));
    a.update(3, fit(0.5), bv({0, 0}));
    const double before = a.min_pairwise_distance();
    CHECK(before == doctest::Approx(1.0));

    // Closest pair is ([1,0],[0,0]) in enumeration order; both members have
    // min-distance-to-others 1, so the tie overwrites slot k = 2.
    const auto r = a.update(4, fit(0.1), bv({10, 10}));
    CHECK(r.kind == UpdateResult::GrewReplacedCell);
    CHECK(r.cell == 2);
    CHECK(a.cells()[0].centroid == bv({1, 0}));
    CHECK(a.cells()[1].centroid == bv({0, 1}));
    CHECK(a.cells()[2].centroid == bv({10, 10}));
    CHECK(a.min_pairwise_distance() == doctest::Approx(std::sqrt(2.0)));
    CHECK(a.min_pairwise_distance() > before);
}

TEST_CASE("duplicate behavior competes by fitness") {
    GrowingArchive a(3, DistanceKind::Euclidean);
    a.update(1, fit(0.3), bv({1, 0}));
    a.update(2, fit(0.4), bv({0, 1}));
    a.update(3, fit(0.5), bv({0, 0}));

    auto r = a.update(4, fit(0.2), bv({1, 0}));
    CHECK(r.kind == UpdateResult::Rejected);
    r = a.update(5, fit(0.9), bv({1, 0}));
    CHECK(r.kind == UpdateResult::ReplacedElite);
    CHECK(a.cells()[0].elite.solution_id == 5);
    CHECK(a.cells()[0].backup.solution_id == 1);  // backup unchanged
}

TEST_CASE("equal fitness keeps the incumbent") {
    GrowingArchive a(1, DistanceKind::Euclidean);
    a.update(1, fit(0.5), bv({0, 0}));
    const auto r = a.update(2, fit(0.5), bv({0, 0}));
    CHECK(r.kind == UpdateResult::Rejected);
    CHECK(a.cells()[0].elite.solution_id == 1);
}

TEST_CASE("capacity one behaves as a hill climber") {
    GrowingArchive a(1, DistanceKind::Euclidean);
    Rng rng(3);
    double best = -1.0;
    for (int i = 0; i < 100; ++i) {
        const double f = rng.uniform();
        const auto r = a.update(static_cast<std::uint64_t>(i + 1), fit(f),
                                bv({rng.uniform(), rng.uniform()}));
        if (i == 0) {
            CHECK(r.kind == UpdateResult::AddedNewCell);
            best = f;
        } else if (f > best) {
            CHECK(r.kind == UpdateResult::ReplacedElite);
            best = f;
        } else {
            CHECK(r.kind == UpdateResult::Rejected);
        }
    }
    CHECK(a.size() == 1);
}

TEST_CASE("growing archive fuzz: invariants hold") {
    struct Config {
        std::size_t dim;
        DistanceKind kind;
        std::size_t capacity;
    };
    for (const Config cfg : {Config{2, DistanceKind::Euclidean, 5},
                             Config{8, DistanceKind::Cosine, 5}}) {
        GrowingArchive a(cfg.capacity, cfg.kind);
        Rng rng(777 + cfg.dim);
        double last_min = 0.0;
        std::vector<double> elite_fitness(cfg.capacity, 0.0);
        for (int i = 0; i < 2000; ++i) {
            std::vector<double> v(cfg.dim);
            for (auto& x : v) x = rng.uniform() * 2.0 - 1.0;
            if (cfg.kind == DistanceKind::Cosine) v[0] += 2.1;  // keep away from zero
            const auto r = a.update(static_cast<std::uint64_t>(i + 1), fit(rng.uniform()),
                                    bv(std::move(v), cfg.kind));

            CHECK(a.size() <= cfg.capacity);
            if (a.size() == cfg.capacity) {
                const double mn = a.min_pairwise_distance();
                if (r.kind == UpdateResult::GrewReplacedCell) CHECK(mn > last_min);
                else CHECK(mn >= last_min);
                last_min = mn;
            }
            for (std::size_t c = 0; c < a.size(); ++c) {
                CHECK(a.cells()[c].backup.behavior == a.cells()[c].centroid);
            }
            if (r.kind == UpdateResult::GrewReplacedCell) {
                for (std::size_t c = 0; c < a.size(); ++c)
                    CHECK(a.find_cell(a.cells()[c].elite.behavior) == c);
                // Growth may reset stolen elites; re-baseline the tracker.
                for (std::size_t c = 0; c < a.size(); ++c)
                    elite_fitness[c] = a.cells()[c].elite.fitness.primary;
            } else {
                // Between growth events a cell's elite fitness never drops.
                for (std::size_t c = 0; c < a.size(); ++c) {
                    CHECK(a.cells()[c].elite.fitness.primary >= elite_fitness[c]);
                    elite_fitness[c] = a.cells()[c].elite.fitness.primary;
                }
            }
        }
        // Full hole check at the end as well.
        for (std::size_t c = 0; c < a.size(); ++c)
            CHECK(a.find_cell(a.cells()[c].elite.behavior) == c);
    }
}

TEST_CASE("update distance-call budget stays within n^2 + 2n") {
    const std::size_t n = 20;
    GrowingArchive a(n, DistanceKind::Euclidean);
    Rng rng(11);
    for (int i = 0; i < 500; ++i) {
        std::vector<double> v{rng.uniform() * 6 - 3, rng.uniform() * 6 - 3};
        a.reset_distance_call_count();
        a.update(static_cast<std::uint64_t>(i + 1), fit(rng.uniform()), bv(std::move(v)));
        CHECK(a.distance_call_count() <= n * n + 2 * n);
    }
}

TEST_CASE("growing archive matches the reference transliteration state-for-state") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Rng rng(1000 + seed);
        const std::size_t capacity = 2 + rng.uniform_index(4);
        GrowingArchive a(capacity, DistanceKind::Euclidean);
        ref::RefArchive r;
        r.capacity = capacity;
        for (int i = 0; i < 200; ++i) {
            const std::vector<double> v{rng.uniform() * 4 - 2, rng.uniform() * 4 - 2};
            const double f = rng.uniform();
            a.update(static_cast<std::uint64_t>(i + 1), fit(f), bv(v));
            ref::ref_update(r, static_cast<std::uint64_t>(i + 1), f, v);

            REQUIRE(a.size() == r.centroids.size());
            for (std::size_t c = 0; c < a.size(); ++c) {
                CHECK(a.cells()[c].centroid.values == r.centroids[c]);
                CHECK(a.cells()[c].elite.solution_id == r.elites[c].id);
                CHECK(a.cells()[c].elite.fitness.primary == r.elites[c].fitness);
                CHECK(a.cells()[c].elite.behavior.values == r.elites[c].behavior);
                CHECK(a.cells()[c].backup.solution_id == r.backups[c].id);
            }
        }
    }
}

TEST_CASE("fixed CVT archive") {
    std::vector<BehaviorVector> centroids{bv({0, 0}), bv({10, 0})};
    FixedCvtArchive a(centroids, FitnessMode::SingleObjective);
    CHECK(a.occupied() == 0);

    auto r = a.update(1, fit(0.5), bv({1, 0}));
    CHECK(r.kind == UpdateResult::AddedNewCell);
    CHECK(r.cell == 0);
    r = a.update(2, fit(0.1), bv({0.5, 0}));
    CHECK(r.kind == UpdateResult::Rejected);  // lower fitness, occupied cell
    r = a.update(3, fit(0.9), bv({2, 0}));
    CHECK(r.kind == UpdateResult::ReplacedElite);
    CHECK(a.elites()[0]->solution_id == 3);
    // Centroids never move.
    CHECK(a.centroids()[0] == bv({0, 0}));
    CHECK(a.centroids()[1] == bv({10, 0}));
}

TEST_CASE("archive rejects malformed inputs") {
    GrowingArchive a(4, DistanceKind::Euclidean);
    a.update(1, fit(0.0), bv({0, 0}));
    CHECK_THROWS(a.update(2, fit(0.0), bv({0, 0, 0})));  // dimension mismatch
    CHECK_THROWS(a.update(3, Fitness{std::nan(""), 0}, bv({1, 1})));
    CHECK_THROWS(a.update(4, fit(0.0), bv({1, 1}, DistanceKind::Cosine)));
}
