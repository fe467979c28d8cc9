#include <doctest.h>

#include <cmath>
#include <map>

#include "game/analysis.hpp"

using namespace game;

namespace {

// Matrix from explicit (fitness_a, fitness_b) grids; rows are Red.
TournamentMatrix matrix_from(const std::vector<std::vector<std::pair<double, double>>>& grid) {
    TournamentMatrix m;
    m.side_a = Side::Red;
    const std::size_t rows = grid.size(), cols = grid[0].size();
    for (std::size_t r = 0; r < rows; ++r) m.ids_a.push_back(100 + r);
    for (std::size_t c = 0; c < cols; ++c) m.ids_b.push_back(200 + c);
    m.entries.resize(rows * cols);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            DuelRecord& e = m.at(r, c);
            e.fitness_a = Fitness{grid[r][c].first, 0};
            e.fitness_b = Fitness{grid[r][c].second, 0};
        }
    }
    return m;
}

} // namespace

TEST_CASE("elo: single win between equal ratings moves exactly K/2") {
    const auto m = matrix_from({{{1.0, 0.0}}});
    EloConfig cfg;
    cfg.epochs = 1;
    const EloTable t = elo(m, cfg);
    CHECK(t.rating_of(100, Side::Red) == doctest::Approx(1016.0));
    CHECK(t.rating_of(200, Side::Blue) == doctest::Approx(984.0));
}

TEST_CASE("elo: all draws leave ratings at the initial value") {
    const auto m = matrix_from({{{0.5, 0.5}, {0.5, 0.5}}, {{0.5, 0.5}, {0.5, 0.5}}});
    const EloTable t = elo(m);
    for (const auto& e : t.entries) CHECK(e.rating == doctest::Approx(1000.0));
}

TEST_CASE("elo: transitive dominance yields a consistent ordering") {
    // Red pool {A, B, C} vs blue pool {X, Y}: A beats both, B beats one
    // (draws the other), C loses both.
    const auto m = matrix_from({
        {{1.0, 0.0}, {1.0, 0.0}},
        {{1.0, 0.0}, {0.5, 0.5}},
        {{0.0, 1.0}, {0.0, 1.0}},
    });
    const EloTable t = elo(m);
    CHECK(t.rating_of(100, Side::Red) > t.rating_of(101, Side::Red));
    CHECK(t.rating_of(101, Side::Red) > t.rating_of(102, Side::Red));
}

TEST_CASE("elo updates are zero-sum") {
    Rng rng(10);
    std::vector<std::vector<std::pair<double, double>>> grid(6);
    for (auto& row : grid)
        for (int c = 0; c < 6; ++c) {
            const double f = rng.uniform();
            row.push_back({f, 1.0 - f});
        }
    const EloTable t = elo(matrix_from(grid));
    double mean = 0.0;
    for (const auto& e : t.entries) mean += e.rating;
    mean /= static_cast<double>(t.entries.size());
    CHECK(std::abs(mean - 1000.0) < 1e-6);
}

TEST_CASE("elo ordering is invariant to the initial rating") {
    const auto m = matrix_from({
        {{1.0, 0.0}, {0.3, 0.7}},
        {{0.9, 0.1}, {0.2, 0.8}},
    });
    EloConfig a, b;
    b.initial = 1737.0;
    const EloTable ta = elo(m, a), tb = elo(m, b);
    REQUIRE(ta.entries.size() == tb.entries.size());
    for (std::size_t i = 0; i < ta.entries.size(); ++i)
        for (std::size_t j = 0; j < ta.entries.size(); ++j)
            CHECK((ta.entries[i].rating < ta.entries[j].rating) ==
                  (tb.entries[i].rating < tb.entries[j].rating));
}

TEST_CASE("pca2: collinear points put all variance on the first component") {
    std::vector<BehaviorVector> behaviors;
    for (int i = 0; i < 10; ++i)
        behaviors.push_back(BehaviorVector{{static_cast<double>(i), 0.0, 0.0},
                                           DistanceKind::Euclidean});
    const PcaProjection p = pca2(behaviors);
    CHECK(p.explained1 == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(p.explained2 == doctest::Approx(0.0).epsilon(1e-8));
    CHECK(std::abs(p.component1[0]) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("pca2 recovers a plane embedded in 50 dimensions") {
    Rng rng(321);
    // Random orthonormal-ish plane via two random directions.
    std::vector<double> u(50), v(50);
    for (auto& x : u) x = rng.uniform() - 0.5;
    for (auto& x : v) x = rng.uniform() - 0.5;
    std::vector<BehaviorVector> behaviors;
    for (int i = 0; i < 200; ++i) {
        const double a = rng.uniform() * 4 - 2, b = rng.uniform() * 2 - 1;
        std::vector<double> p(50);
        for (int d = 0; d < 50; ++d) p[d] = a * u[d] + b * v[d];
        behaviors.push_back(BehaviorVector{std::move(p), DistanceKind::Euclidean});
    }
    const PcaProjection p = pca2(behaviors);
    CHECK(p.explained1 + p.explained2 >= 0.999);

    // Components orthonormal within 1e-9.
    double n1 = 0, n2 = 0, dot = 0;
    for (std::size_t i = 0; i < 50; ++i) {
        n1 += p.component1[i] * p.component1[i];
        n2 += p.component2[i] * p.component2[i];
        dot += p.component1[i] * p.component2[i];
    }
    CHECK(std::abs(n1 - 1.0) <= 1e-9);
    CHECK(std::abs(n2 - 1.0) <= 1e-9);
    CHECK(std::abs(dot) <= 1e-9);
    CHECK(p.explained1 >= p.explained2);
}

TEST_CASE("pca2: explained variance matches the Rayleigh quotient") {
    Rng rng(55);
    std::vector<BehaviorVector> behaviors;
    for (int i = 0; i < 60; ++i) {
        std::vector<double> p(6);
        for (auto& x : p) x = rng.uniform() * 3;
        behaviors.push_back(BehaviorVector{std::move(p), DistanceKind::Euclidean});
    }
    const PcaProjection p = pca2(behaviors);

    // Independent Rayleigh quotient of component1 on the centered covariance.
    const std::size_t n = behaviors.size(), dim = 6;
    std::vector<double> mean(dim, 0.0);
    for (const auto& b : behaviors)
        for (std::size_t d = 0; d < dim; ++d) mean[d] += b.values[d];
    for (auto& m : mean) m /= static_cast<double>(n);
    double total = 0.0, quad = 0.0;
    for (const auto& b : behaviors) {
        double proj = 0.0;
        for (std::size_t d = 0; d < dim; ++d) {
            const double c = b.values[d] - mean[d];
            proj += c * p.component1[d];
            total += c * c;
        }
        quad += proj * proj;
    }
    CHECK(p.explained1 == doctest::Approx(quad / total).epsilon(1e-8));
}

TEST_CASE("pca2 flags zero-variance data") {
    std::vector<BehaviorVector> behaviors(
        5, BehaviorVector{{1.0, 2.0, 3.0}, DistanceKind::Euclidean});
    const PcaProjection p = pca2(behaviors);
    CHECK(p.degenerate);
    CHECK(p.explained1 == 0.0);
}

TEST_CASE("coverage_qdscore basics") {
    SUBCASE("identical points occupy one bin") {
        std::vector<double> xs(5, 1.0), ys(5, 2.0), fs{0.1, 0.2, 0.3, 0.4, 0.5};
        const auto res = coverage_qdscore(xs, ys, fs, 100);
        CHECK(res.occupied_bins == 1);
        CHECK(res.coverage == doctest::Approx(1.0 / 10000.0));
        CHECK(res.qd_score == doctest::Approx(0.5));  // bin elite
    }
    SUBCASE("2x2 grid with one point per corner") {
        std::vector<double> xs{0, 1, 0, 1}, ys{0, 0, 1, 1}, fs{0.1, 0.2, 0.3, 0.4};
        const auto res = coverage_qdscore(xs, ys, fs, 2);
        CHECK(res.coverage == doctest::Approx(1.0));
        CHECK(res.qd_score == doctest::Approx(0.25));
    }
    SUBCASE("permutation invariance") {
        std::vector<double> xs{0.3, 0.7, 0.1, 0.9}, ys{0.2, 0.8, 0.5, 0.1},
            fs{0.4, 0.1, 0.9, 0.3};
        const auto a = coverage_qdscore(xs, ys, fs, 10);
        std::vector<double> xs2{0.9, 0.1, 0.7, 0.3}, ys2{0.1, 0.5, 0.8, 0.2},
            fs2{0.3, 0.9, 0.1, 0.4};
        const auto b = coverage_qdscore(xs2, ys2, fs2, 10);
        CHECK(a.coverage == b.coverage);
        CHECK(a.qd_score == b.qd_score);
    }
    SUBCASE("matches an independent histogram") {
        Rng rng(2);
        std::vector<double> xs, ys, fs;
        for (int i = 0; i < 500; ++i) {
            xs.push_back(rng.uniform());
            ys.push_back(rng.uniform());
            fs.push_back(rng.uniform());
        }
        const std::size_t n = 10;
        const auto res = coverage_qdscore(xs, ys, fs, n);

        const auto bounds = bounding_box(xs, ys);
        std::map<std::pair<std::size_t, std::size_t>, double> hist;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            auto bx = static_cast<std::size_t>((xs[i] - bounds.min_x) /
                                               (bounds.max_x - bounds.min_x) * n);
            auto by = static_cast<std::size_t>((ys[i] - bounds.min_y) /
                                               (bounds.max_y - bounds.min_y) * n);
            bx = std::min(bx, n - 1);
            by = std::min(by, n - 1);
            auto& slot = hist[{bx, by}];
            slot = std::max(slot, fs[i]);
        }
        CHECK(res.occupied_bins == hist.size());
        double sum = 0;
        for (const auto& [k, v] : hist) sum += v;
        CHECK(res.qd_score == doctest::Approx(sum / hist.size()));
    }
}

TEST_CASE("ranking vectors and novelty") {
    CHECK(ranking_vector({0.9, 0.1, 0.5}) == RankingVector{0, 2, 1});
    CHECK(ranking_vector({0.5, 0.5, 0.1}) == RankingVector{0, 1, 2});  // tie -> low index

    const RankingVector a{0, 1, 2}, b{1, 0, 2}, c{2, 1, 0}, d{0, 2, 1}, e{1, 2, 0};
    SUBCASE("identical generation -> 0% new") {
        const auto nov = ranking_novelty({{a, b, c}, {a, b, c}});
        CHECK(nov[1] == 0.0);
        CHECK(nov[0] == 1.0);  // first generation: everything counts as new
    }
    SUBCASE("fully novel generation -> 100% new") {
        const auto nov = ranking_novelty({{a, b, c}, {d, e, d}});
        CHECK(nov[1] == 1.0);
    }
    SUBCASE("2 repeats of 5 -> 60% new") {
        const auto nov = ranking_novelty({{a, b}, {a, b, c, d, e}});
        CHECK(nov[1] == doctest::Approx(0.6));
    }
    SUBCASE("mismatched reference sets are rejected") {
        CHECK_THROWS(ranking_novelty({{a}, {RankingVector{0, 1}}}));
    }
}

TEST_CASE("spearman") {
    CHECK(spearman({1, 2, 3, 4}, {1, 2, 3, 4}) == doctest::Approx(1.0));
    CHECK(spearman({1, 2, 3, 4}, {4, 3, 2, 1}) == doctest::Approx(-1.0));
    CHECK(spearman({1, 2, 3, 4}, {1, 3, 2, 4}) == doctest::Approx(0.8));
    CHECK(spearman({1, 2, 3, 4}, {2, 4, 6, 8.5}) == doctest::Approx(1.0));  // monotone
    CHECK_THROWS(spearman({1, 1, 1}, {1, 2, 3}));  // zero rank variance
    CHECK_THROWS(spearman({1}, {1}));
}

TEST_CASE("action entropy") {
    CHECK(action_entropy(std::array<std::uint32_t, kActionKinds>{10, 0, 0, 0, 0}) == 0.0);
    CHECK(action_entropy(std::array<std::uint32_t, kActionKinds>{5, 5, 5, 5, 0}) ==
          doctest::Approx(2.0));
    CHECK(action_entropy(std::array<std::uint32_t, kActionKinds>{8, 8, 0, 0, 0}) ==
          doctest::Approx(1.0));
    CHECK(action_entropy(std::vector<std::uint64_t>{}) == 0.0);
}

TEST_CASE("lineage chains") {
    GenerationsLog log;
    log.lineage = {
        {1, {}, 0, OpTag::Random, "r"},
        {2, {1}, 1, OpTag::Mutation, "m1"},
        {3, {2}, 1, OpTag::Mutation, "m2"},
        {4, {3, 2}, 2, OpTag::Crossover, "x"},
        {5, {4}, 2, OpTag::Mutation, "m3"},
        {6, {5}, 3, OpTag::Mutation, "m4"},
    };

    SUBCASE("random root has chain length 1") {
        const auto chain = lineage_chain(log, 1);
        REQUIRE(chain.size() == 1);
        CHECK(chain[0].record->solution_id == 1);
    }
    SUBCASE("five chained operations give chain length 6") {
        const auto chain = lineage_chain(log, 6);
        REQUIRE(chain.size() == 6);
        CHECK(chain.front().record->solution_id == 1);
        CHECK(chain.back().record->solution_id == 6);
        // Crossover annotates its second parent.
        CHECK(chain[3].record->solution_id == 4);
        CHECK(chain[3].annotation_parent == 2);
    }
    SUBCASE("unknown ids are rejected") { CHECK_THROWS(lineage_chain(log, 99)); }
}
