#include "slink/errors.hpp"
#include "slink/scoring.hpp"

#include "support/oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace slink;

TEST_CASE("hand-computed 2x3 instance matches to 1e-9") {
    // frozen values from an independent spreadsheet-style recomputation
    const std::vector<std::vector<double>> cosines = {{0.8, 0.2, -0.4}, {0.1, 0.5, 0.3}};
    const auto scored = score_from_cosines({10, 20, 30}, cosines);

    CHECK(scored.probs[0][0] == doctest::Approx(0.500000000000000).epsilon(1e-9));
    CHECK(scored.probs[0][1] == doctest::Approx(0.333333333333333).epsilon(1e-9));
    CHECK(scored.probs[0][2] == doctest::Approx(0.166666666666667).epsilon(1e-9));
    CHECK(scored.probs[1][0] == doctest::Approx(0.282051282051282).epsilon(1e-9));
    CHECK(scored.probs[1][1] == doctest::Approx(0.384615384615385).epsilon(1e-9));
    CHECK(scored.probs[1][2] == doctest::Approx(0.333333333333333).epsilon(1e-9));

    CHECK(scored.entropies[0] == doctest::Approx(1.011404264707352).epsilon(1e-9));
    CHECK(scored.entropies[1] == doctest::Approx(1.090691321403615).epsilon(1e-9));
    CHECK(scored.mean_entropy == doctest::Approx(1.051047793055484).epsilon(1e-9));

    CHECK(scored.scores[0][0] == doctest::Approx(0.458918625859282).epsilon(1e-9));
    CHECK(scored.scores[0][1] == doctest::Approx(0.305945750572855).epsilon(1e-9));
    CHECK(scored.scores[0][2] == doctest::Approx(0.152972875286427).epsilon(1e-9));
    CHECK(scored.scores[1][0] == doctest::Approx(0.269549728641550).epsilon(1e-9));
    CHECK(scored.scores[1][1] == doctest::Approx(0.367567811783931).epsilon(1e-9));
    CHECK(scored.scores[1][2] == doctest::Approx(0.318558770212741).epsilon(1e-9));
}

TEST_CASE("single candidate: point mass, zero entropy, sigma(0) factor") {
    const auto scored = score_from_cosines({5}, {{0.6}, {-0.2}});
    for (std::size_t k = 0; k < 2; ++k) {
        CHECK(scored.probs[k][0] == doctest::Approx(1.0));
        CHECK(scored.entropies[k] == doctest::Approx(0.0));
    }
    CHECK(scored.mean_entropy == doctest::Approx(0.0));
    // s = (1+cos)/2 * sigma(0) = (1+cos)/4
    CHECK(scored.scores[0][0] == doctest::Approx(0.25 * (1.0 + 0.6)).epsilon(1e-12));
    CHECK(scored.scores[1][0] == doctest::Approx(0.25 * (1.0 - 0.2)).epsilon(1e-12));
}

TEST_CASE("uniform cosines give maximal entropy and sigmoid one half") {
    const auto scored = score_from_cosines({1, 2, 3, 4}, {{0.3, 0.3, 0.3, 0.3}});
    CHECK(scored.entropies[0] == doctest::Approx(std::log(4.0)).epsilon(1e-12));
    CHECK(scored.mean_entropy == doctest::Approx(std::log(4.0)).epsilon(1e-12));
    for (double s : scored.scores[0]) {
        CHECK(s == doctest::Approx(0.5 * (1.0 + 0.3) * 0.5).epsilon(1e-12));
    }
}

TEST_CASE("degenerate probe rows are neutralized with a diagnostic flag") {
    const auto scored = score_from_cosines({1, 2}, {{-1.0, -1.0}, {0.5, 0.0}});
    CHECK(scored.degenerate_probes[0]);
    CHECK_FALSE(scored.degenerate_probes[1]);
    CHECK(scored.probs[0][0] == doctest::Approx(0.5));
    CHECK(scored.probs[0][1] == doctest::Approx(0.5));
    CHECK(scored.scores[0][0] == 0.0);
    CHECK(scored.scores[0][1] == 0.0);
    CHECK(scored.scores[1][0] > 0.0);
}

TEST_CASE("rows sum to one, entropies and scores stay in range") {
    std::mt19937 rng(123);
    for (int trial = 0; trial < 50; ++trial) {
        std::uniform_int_distribution<std::size_t> kd(1, 5);
        std::uniform_int_distribution<std::size_t> cd(1, 20);
        const std::size_t probes = kd(rng);
        const std::size_t cands = cd(rng);
        const auto cosines = testing::random_cosines(rng, probes, cands);
        std::vector<int> ids(cands);
        for (std::size_t i = 0; i < cands; ++i) ids[i] = static_cast<int>(i);
        const auto scored = score_from_cosines(ids, cosines);
        for (std::size_t k = 0; k < probes; ++k) {
            double sum = 0.0;
            for (double p : scored.probs[k]) {
                sum += p;
                CHECK(p >= 0.0);
            }
            CHECK(std::abs(sum - 1.0) <= 1e-9);
            CHECK(scored.entropies[k] >= 0.0);
            CHECK(scored.entropies[k] <= std::log(static_cast<double>(cands)) + 1e-9);
            for (double s : scored.scores[k]) {
                CHECK(s >= 0.0);
                CHECK(s <= 1.0);
            }
        }
    }
}

TEST_CASE("random instances match the independent oracle") {
    std::mt19937 rng(77);
    for (int trial = 0; trial < 100; ++trial) {
        std::uniform_int_distribution<std::size_t> kd(1, 5);
        std::uniform_int_distribution<std::size_t> cd(2, 20);
        const std::size_t probes = kd(rng);
        const std::size_t cands = cd(rng);
        const auto cosines = testing::random_cosines(rng, probes, cands);
        std::vector<int> ids(cands);
        for (std::size_t i = 0; i < cands; ++i) ids[i] = static_cast<int>(i) * 3;
        const auto scored = score_from_cosines(ids, cosines);
        const auto oracle = testing::score_oracle(cosines);
        for (std::size_t k = 0; k < probes; ++k) {
            CHECK(std::abs(scored.entropies[k] - oracle.entropies[k]) <= 1e-9);
            for (std::size_t d = 0; d < cands; ++d) {
                CHECK(std::abs(scored.scores[k][d] - oracle.scores[k][d]) <= 1e-9);
            }
        }
    }
}

TEST_CASE("entropy ablation drops the damping factor") {
    const std::vector<std::vector<double>> cosines = {{0.9, -0.1}, {0.2, 0.2}};
    const auto damped = score_from_cosines({0, 1}, cosines, {.entropy_damping = true});
    const auto flat = score_from_cosines({0, 1}, cosines, {.entropy_damping = false});
    CHECK(flat.scores[0][0] == doctest::Approx(0.5 * 1.9).epsilon(1e-12));
    CHECK_FALSE(damped.scores[0][0] == flat.scores[0][0]);
    // entropies are still reported under the ablation
    CHECK(flat.entropies[0] == doctest::Approx(damped.entropies[0]));
}

TEST_CASE("score preconditions") {
    CHECK_THROWS_AS(score_from_cosines({}, {{0.5}}), ArgumentError);
    CHECK_THROWS_AS(score_from_cosines({1}, {}), ArgumentError);
    CHECK_THROWS_AS(score_from_cosines({1, 2}, {{0.5}}), ArgumentError);
}
