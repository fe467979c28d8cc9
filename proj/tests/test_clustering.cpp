#include <doctest.h>

#include <cmath>

#include "game/archive.hpp"
#include "game/clustering.hpp"
#include "game/rng.hpp"

using namespace game;

namespace {

// Independent single-run Lloyd iteration used as a fixture oracle for the
// two-cloud cases: with well-separated clouds any seeding converges to the
// cloud means.
std::vector<std::vector<double>> two_cloud_means(const std::vector<std::vector<double>>& pts,
                                                 std::size_t split) {
    std::vector<std::vector<double>> means(2, std::vector<double>(pts[0].size(), 0.0));
    for (std::size_t i = 0; i < pts.size(); ++i) {
        auto& m = means[i < split ? 0 : 1];
        for (std::size_t d = 0; d < m.size(); ++d) m[d] += pts[i][d];
    }
    for (std::size_t c = 0; c < 2; ++c) {
        const double n = static_cast<double>(c == 0 ? split : pts.size() - split);
        for (double& v : means[c]) v /= n;
    }
    return means;
}

} // namespace

TEST_CASE("kmeans: k equals point count") {
    std::vector<std::vector<double>> pts{{0, 0}, {1, 1}, {2, 2}};
    const auto res = kmeans(pts, 3, 9);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        CHECK(res.assignments[i] == i);
        CHECK(res.centroids[i] == pts[i]);
        CHECK(res.cluster_sizes[i] == 1);
    }
}

TEST_CASE("kmeans: k = 1 yields the coordinate-wise mean") {
    std::vector<std::vector<double>> pts{{0, 0}, {2, 0}, {0, 2}, {2, 2}};
    const auto res = kmeans(pts, 1, 5);
    CHECK(res.centroids[0][0] == doctest::Approx(1.0));
    CHECK(res.centroids[0][1] == doctest::Approx(1.0));
    CHECK(res.cluster_sizes[0] == 4);
}

TEST_CASE("kmeans separates two gaussian blobs") {
    Rng rng(1234);
    std::vector<std::vector<double>> pts;
    auto gauss = [&]() {
        // Box-Muller
        const double u1 = rng.uniform() + 1e-12, u2 = rng.uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2 * 3.14159265358979 * u2);
    };
    for (int i = 0; i < 40; ++i) pts.push_back({gauss() * 0.5, gauss() * 0.5});
    for (int i = 0; i < 40; ++i) pts.push_back({10.0 + gauss() * 0.5, gauss() * 0.5});

    const auto res = kmeans(pts, 2, 99);
    // All points of one blob share a label, and labels differ across blobs.
    for (int i = 1; i < 40; ++i) CHECK(res.assignments[i] == res.assignments[0]);
    for (int i = 41; i < 80; ++i) CHECK(res.assignments[i] == res.assignments[40]);
    CHECK(res.assignments[0] != res.assignments[40]);

    // Centroids match the cloud means (independent computation).
    const auto means = two_cloud_means(pts, 40);
    const auto& c0 = res.centroids[res.assignments[0]];
    const auto& c1 = res.centroids[res.assignments[40]];
    CHECK(c0[0] == doctest::Approx(means[0][0]).epsilon(1e-9));
    CHECK(c0[1] == doctest::Approx(means[0][1]).epsilon(1e-9));
    CHECK(c1[0] == doctest::Approx(means[1][0]).epsilon(1e-9));
    CHECK(c1[1] == doctest::Approx(means[1][1]).epsilon(1e-9));
}

TEST_CASE("kmeans is deterministic for a fixed seed") {
    Rng rng(5);
    std::vector<std::vector<double>> pts;
    for (int i = 0; i < 30; ++i) pts.push_back({rng.uniform(), rng.uniform(), rng.uniform()});
    const auto a = kmeans(pts, 5, 333);
    const auto b = kmeans(pts, 5, 333);
    CHECK(a.assignments == b.assignments);
    CHECK(a.centroids == b.centroids);
}

TEST_CASE("kmeans with fewer points than k leaves empty clusters") {
    std::vector<std::vector<double>> pts{{1, 1}, {2, 2}};
    const auto res = kmeans(pts, 5, 0);
    CHECK(res.assignments == std::vector<std::size_t>{0, 1});
    CHECK(res.cluster_sizes[0] == 1);
    CHECK(res.cluster_sizes[1] == 1);
    CHECK(res.cluster_sizes[2] == 0);
}

TEST_CASE("spherical kmeans normalizes cosine behaviors") {
    // Same direction, different magnitudes: one cluster after normalization.
    std::vector<BehaviorVector> behaviors{
        BehaviorVector{{1, 0}, DistanceKind::Cosine},
        BehaviorVector{{5, 0}, DistanceKind::Cosine},
        BehaviorVector{{0, 1}, DistanceKind::Cosine},
        BehaviorVector{{0, 9}, DistanceKind::Cosine},
    };
    const auto res = kmeans_behaviors(behaviors, 2, 17);
    CHECK(res.assignments[0] == res.assignments[1]);
    CHECK(res.assignments[2] == res.assignments[3]);
    CHECK(res.assignments[0] != res.assignments[2]);
}

TEST_CASE("make_fixed_cvt style flow: two clouds, two cells") {
    Rng rng(808);
    std::vector<BehaviorVector> samples;
    for (int i = 0; i < 20; ++i)
        samples.push_back(BehaviorVector{{rng.uniform(), rng.uniform()},
                                         DistanceKind::Euclidean});
    for (int i = 0; i < 20; ++i)
        samples.push_back(BehaviorVector{{20 + rng.uniform(), rng.uniform()},
                                         DistanceKind::Euclidean});
    const auto km = kmeans_behaviors(samples, 2, 4);
    std::vector<BehaviorVector> centroids;
    for (const auto& c : km.centroids)
        centroids.push_back(BehaviorVector{c, DistanceKind::Euclidean});
    FixedCvtArchive archive(centroids);

    // One centroid per cloud.
    const bool c0_left = centroids[0].values[0] < 10.0;
    CHECK(c0_left != (centroids[1].values[0] < 10.0));
    // Updates land in the cloud-side cell.
    const auto r =
        archive.update(1, Fitness{0.5, 0}, BehaviorVector{{0.5, 0.5}, DistanceKind::Euclidean});
    CHECK(r.cell == (c0_left ? 0 : 1));
}

TEST_CASE("make_fixed_cvt") {
    SUBCASE("n_cell equals sample count keeps the samples as centroids") {
        std::vector<BehaviorVector> samples{
            BehaviorVector{{0, 0}, DistanceKind::Euclidean},
            BehaviorVector{{3, 1}, DistanceKind::Euclidean},
            BehaviorVector{{-2, 5}, DistanceKind::Euclidean},
        };
        const FixedCvtArchive a = make_fixed_cvt(samples, 3, 7);
        std::vector<BehaviorVector> got = a.centroids();
        // Order-insensitive comparison.
        for (const auto& s : samples)
            CHECK(std::count(got.begin(), got.end(), s) == 1);
    }
    SUBCASE("two separated clouds give one centroid per cloud") {
        Rng rng(12);
        std::vector<BehaviorVector> samples;
        for (int i = 0; i < 15; ++i)
            samples.push_back(BehaviorVector{{rng.uniform(), rng.uniform()},
                                             DistanceKind::Euclidean});
        for (int i = 0; i < 15; ++i)
            samples.push_back(BehaviorVector{{50 + rng.uniform(), rng.uniform()},
                                             DistanceKind::Euclidean});
        const FixedCvtArchive a = make_fixed_cvt(samples, 2, 3);
        const bool left0 = a.centroids()[0].values[0] < 25;
        CHECK(left0 != (a.centroids()[1].values[0] < 25));
    }
    SUBCASE("update below an occupied cell's elite changes nothing") {
        std::vector<BehaviorVector> samples{
            BehaviorVector{{0, 0}, DistanceKind::Euclidean},
            BehaviorVector{{10, 0}, DistanceKind::Euclidean},
        };
        FixedCvtArchive a = make_fixed_cvt(samples, 2, 1);
        a.update(1, Fitness{0.8, 0}, BehaviorVector{{0.1, 0}, DistanceKind::Euclidean});
        const auto r =
            a.update(2, Fitness{0.2, 0}, BehaviorVector{{0.2, 0}, DistanceKind::Euclidean});
        CHECK(r.kind == UpdateResult::Rejected);
        CHECK(a.elites()[0]->solution_id == 1);
    }
    SUBCASE("too few samples is an error") {
        std::vector<BehaviorVector> samples{BehaviorVector{{0, 0}, DistanceKind::Euclidean}};
        CHECK_THROWS(make_fixed_cvt(samples, 2, 0));
    }
}
