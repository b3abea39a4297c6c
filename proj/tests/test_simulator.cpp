#include <doctest.h>

#include <cstdio>
#include <vector>

#include "polling/globally_gated.hpp"
#include "polling/model.hpp"
#include "polling/mva_exhaustive.hpp"
#include "polling/mva_locally_gated.hpp"
#include "polling/simulator.hpp"
#include "polling/transforms.hpp"

using namespace polling;

namespace {

SimConfig quick_config(std::uint64_t seed) {
    SimConfig cfg;
    cfg.replications = 8;
    cfg.batches_per_replication = 50000;
    cfg.seed = seed;
    return cfg;
}

}  // namespace

TEST_CASE("identical seeds give identical estimates") {
    PollingModel m = make_model_a(0.6);
    SimConfig cfg = quick_config(42);
    cfg.lst_probes = {0.5};
    auto a = simulate(m, Discipline::LocallyGated, cfg);
    auto b = simulate(m, Discipline::LocallyGated, cfg);
    CHECK(a.mean_T.mean == b.mean_T.mean);
    CHECK(a.mean_T.half == b.mean_T.half);
    CHECK(a.mean_C.mean == b.mean_C.mean);
    CHECK(a.mean_W[2].mean == b.mean_W[2].mean);
    CHECK(a.empirical_lst[0].mean == b.empirical_lst[0].mean);

    SimConfig other = quick_config(43);
    auto c = simulate(m, Discipline::LocallyGated, other);
    CHECK(a.mean_T.mean != c.mean_T.mean);
}

TEST_CASE("estimates cover the analytic means, exhaustive") {
    PollingModel m = make_sym2(0.4, 1, 1);
    auto sol = solve_stationary_exh(m);
    auto est = simulate(m, Discipline::Exhaustive, quick_config(7));
    CHECK(est.mean_T.contains(mean_batch_sojourn_exh(m, sol)));
    CHECK(est.mean_C.contains(m.mean_cycle));
    for (int i = 0; i < m.n; ++i) {
        CHECK(est.mean_W[i].contains(sol.wait[i]));
        CHECK(est.mean_L[i].contains(sol.mean_len[i]));
        CHECK(est.busy_fraction[i].contains(m.rho_q[i]));
    }
}

TEST_CASE("estimates cover the analytic means, locally gated") {
    PollingModel m = make_model_a(0.6);
    auto sol = solve_stationary_lg(m);
    auto est = simulate(m, Discipline::LocallyGated, quick_config(8));
    CHECK(est.mean_T.contains(mean_batch_sojourn_lg(m, sol)));
    CHECK(est.mean_C.contains(m.mean_cycle));
    for (int i = 0; i < m.n; ++i) CHECK(est.mean_W[i].contains(sol.wait[i]));
}

TEST_CASE("estimates cover the analytic means, globally gated") {
    PollingModel m = make_model_b(0.6);
    auto est = simulate(m, Discipline::GloballyGated, quick_config(9));
    CHECK(est.mean_T.contains(mean_batch_sojourn_gg(m)));
    auto w = wait_gg(m);
    for (int i = 0; i < m.n; ++i) CHECK(est.mean_W[i].contains(w[i]));
}

TEST_CASE("empirical lst covers the analytic transform") {
    PollingModel m = make_sym2(0.4, 1, 1);
    SimConfig cfg = quick_config(10);
    cfg.lst_probes = {0.5};
    TransformEngine eng(m);
    auto ex = simulate(m, Discipline::Exhaustive, cfg);
    CHECK(ex.empirical_lst[0].contains(
        eng.sojourn_lst_arbitrary(0.5, Discipline::Exhaustive)));
    auto gg = simulate(m, Discipline::GloballyGated, cfg);
    CHECK(gg.empirical_lst[0].contains(sojourn_lst_gg_arbitrary(m, 0.5)));
}

TEST_CASE("visit-beginning pgf probe covers the analytic pgf") {
    PollingModel m = make_model_b(0.6);
    SimConfig cfg = quick_config(11);
    cfg.pgf_probes = {{0.5, 0.5, 0.5}};
    TransformEngine eng(m);
    auto est = simulate(m, Discipline::Exhaustive, cfg);
    double analytic =
        eng.visit_begin_pgf(0, {0.5, 0.5, 0.5}, Discipline::Exhaustive).value;
    CHECK(est.visit_pgf[0].contains(analytic));
}

TEST_CASE("per-class sojourns aggregate to the overall mean") {
    PollingModel m = make_model_c(0.5);
    auto est = simulate(m, Discipline::Exhaustive, quick_config(12));
    REQUIRE(est.class_k.size() == m.batch.entries().size());
    double total = 0.0;
    for (std::size_t c = 0; c < est.class_k.size(); ++c) {
        for (const auto& e : m.batch.entries()) {
            if (e.k == est.class_k[c]) total += e.p * est.class_T[c].mean;
        }
    }
    // Class weights are the exact probabilities; the weighted point
    // estimates should land close to the overall estimate.
    CHECK(total == doctest::Approx(est.mean_T.mean).epsilon(0.02));
}

TEST_CASE("trace export writes one row per recorded batch") {
    PollingModel m = make_sym2(0.4, 1, 1);
    SimConfig cfg;
    cfg.replications = 2;
    cfg.batches_per_replication = 500;
    cfg.warmup_fraction = 0.0;
    cfg.seed = 5;
    cfg.trace_path = "trace_test.csv";
    simulate(m, Discipline::Exhaustive, cfg);
    FILE* f = std::fopen("trace_test.csv", "r");
    REQUIRE(f != nullptr);
    long rows = 0;
    int ch;
    while ((ch = std::fgetc(f)) != EOF)
        if (ch == '\n') ++rows;
    std::fclose(f);
    std::remove("trace_test.csv");
    CHECK(rows == 1001);  // header plus one row per batch across both replications
}

TEST_CASE("moments-only service cannot be simulated") {
    PollingModel m = make_model_c(0.5);
    // Replace a service law with a moments-only specification.
    m.service[0] = Dist::from_moments(0.1, 1.0);
    m.validate();
    CHECK_THROWS_AS(simulate(m, Discipline::Exhaustive, quick_config(1)), Error);
}

TEST_CASE("invalid configurations are rejected") {
    PollingModel m = make_sym2(0.4, 1, 1);
    SimConfig cfg = quick_config(1);
    cfg.replications = 1;
    CHECK_THROWS_AS(simulate(m, Discipline::Exhaustive, cfg), Error);  // needs >= 2 for CIs
    cfg = quick_config(1);
    cfg.warmup_fraction = 1.5;
    CHECK_THROWS_AS(simulate(m, Discipline::Exhaustive, cfg), Error);
}
