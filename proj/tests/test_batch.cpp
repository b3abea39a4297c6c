#include <doctest.h>

#include <vector>

#include "polling/batch.hpp"
#include "polling/model.hpp"

using namespace polling;

TEST_CASE("completion ends for the symmetric pair batch") {
    PollingModel m = make_sym2(0.4, 1, 1);
    std::vector<int> k{1, 1};
    // Starting at either queue, the pair finishes at the other queue.
    CHECK(m.batch.completion_end(0, k) == 1);
    CHECK(m.batch.completion_end(1, k) == 0);
    CHECK(m.batch.completion_probability(0, 1) == doctest::Approx(1.0));
    CHECK(m.batch.completion_probability(0, 0) == doctest::Approx(0.0));
    CHECK(m.batch.conditional_mean(0, 0, 1) == doctest::Approx(1.0));
    CHECK(m.batch.conditional_mean(1, 0, 1) == doctest::Approx(1.0));
}

TEST_CASE("completion probabilities partition for every start") {
    for (const auto* id : {"sym2", "model_a", "model_b", "model_c"}) {
        PollingModel m = make_builtin(id, 0.5, 1, 1);
        for (int s = 0; s < m.n; ++s) {
            double total = 0.0;
            for (int e = 0; e < m.n; ++e) total += m.batch.completion_probability(s, e);
            CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
        }
    }
}

TEST_CASE("conditional means select the right batches") {
    PollingModel b = make_model_b(0.5);
    // Starting at queue 0 and ending at queue 1 selects batch (0,1,0).
    CHECK(b.batch.conditional_mean(1, 0, 1) == doctest::Approx(1.0));
    CHECK(b.batch.conditional_mean(0, 0, 1) == doctest::Approx(0.0));

    PollingModel c = make_model_c(0.5);
    // Starting at queue 0 and ending at queue 2 selects batch (1,0,3).
    CHECK(c.batch.conditional_mean(0, 0, 2) == doctest::Approx(1.0));
    CHECK(c.batch.conditional_mean(2, 0, 2) == doctest::Approx(3.0));
    // The other completion set holds (1,1,0) alone.
    CHECK(c.batch.completion_probability(0, 1) == doctest::Approx(0.8));
    CHECK(c.batch.conditional_pgf({0.5, 0.5, 0.3}, 0, 1) == doctest::Approx(0.25));
}

TEST_CASE("moments of the benchmark batch laws") {
    PollingModel a = make_model_a(0.5);
    // pi(1,1,0) = 1/4, pi(3,0,1) = 3/4.
    CHECK(a.batch.mean(0) == doctest::Approx(2.5));
    CHECK(a.batch.mean(1) == doctest::Approx(0.25));
    CHECK(a.batch.mean(2) == doctest::Approx(0.75));
    CHECK(a.batch.joint_moment(0, 2) == doctest::Approx(0.75 * 3.0));
    // E(K_1(K_1 - 1)) = 0.25*0 + 0.75*6.
    CHECK(a.batch.same_queue_pairs(0) == doctest::Approx(4.5));
    CHECK(a.batch.same_queue_pairs(1) == doctest::Approx(0.0));
}

TEST_CASE("pgf normalization and reconstruction identity") {
    for (const auto* id : {"sym2", "model_a", "model_b", "model_c", "vacation1"}) {
        PollingModel m = make_builtin(id, 0.5, 1, 1);
        std::vector<double> ones(m.n, 1.0);
        CHECK(m.batch.pgf(ones) == doctest::Approx(1.0).epsilon(1e-14));

        // Sum over completion sets of the conditional PGF recovers the PGF.
        std::vector<double> grid{0.0, 0.25, 0.5, 0.75, 1.0};
        std::vector<double> z(m.n);
        std::vector<int> idx(m.n, 0);
        for (;;) {
            for (int i = 0; i < m.n; ++i) z[i] = grid[idx[i]];
            for (int s = 0; s < m.n; ++s) {
                double total = 0.0;
                for (int e = 0; e < m.n; ++e) {
                    double p = m.batch.completion_probability(s, e);
                    if (p > 0.0) total += p * m.batch.conditional_pgf(z, s, e);
                }
                CHECK(total == doctest::Approx(m.batch.pgf(z)).epsilon(1e-12));
            }
            int d = 0;
            while (d < m.n && ++idx[d] == static_cast<int>(grid.size())) idx[d++] = 0;
            if (d == m.n) break;
        }
    }
}

TEST_CASE("pgf derivative recovers the marginal means") {
    PollingModel m = make_model_c(0.5);
    double h = 1e-6;
    for (int i = 0; i < m.n; ++i) {
        std::vector<double> z(m.n, 1.0);
        z[i] = 1.0 - h;
        double fd = (m.batch.pgf(std::vector<double>(m.n, 1.0)) - m.batch.pgf(z)) / h;
        CHECK(fd == doctest::Approx(m.batch.mean(i)).epsilon(1e-5));
    }
}

TEST_CASE("marginal pgf at the benchmark batch law") {
    PollingModel b = make_model_b(0.5);
    // K_1 is 1 with probability 1/3.
    CHECK(b.batch.marginal_pgf(0, 0.5) == doctest::Approx(2.0 / 3.0 + 0.5 / 3.0));
}

TEST_CASE("invalid supports are rejected") {
    using E = BatchSupport::Entry;
    CHECK_THROWS_AS(BatchSupport(2, {E{{1, 1}, 0.5}}), Error);             // sums to 0.5
    CHECK_THROWS_AS(BatchSupport(2, {E{{0, 0}, 1.0}}), Error);             // empty batch
    CHECK_THROWS_AS(BatchSupport(2, {E{{1}, 1.0}}), Error);                // wrong length
    CHECK_THROWS_AS(BatchSupport(2, {E{{1, -1}, 1.0}}), Error);            // negative count
    CHECK_THROWS_AS(BatchSupport(2, {E{{1, 1}, 1.5}, E{{1, 0}, -0.5}}), Error);
}
