#include <doctest.h>

#include <vector>

#include "polling/model.hpp"
#include "polling/mva_locally_gated.hpp"
#include "polling/simulator.hpp"

using namespace polling;

namespace {

// Closed forms for the symmetric two-queue system under locally-gated
// service; lam is the per-queue customer rate.
struct SymLg {
    double before_other, before_own, behind_own, sojourn;
};

SymLg sym_closed(double lam, double b, double s) {
    double r = 2.0 * lam * b;
    SymLg c;
    c.before_other = lam * (0.5 * r * b - 0.5 * r * s + b + 2 * s) / (1 - r);
    c.before_own = lam * (-0.25 * r * r * b + 0.25 * r * r * s + r * b - 0.5 * r * s + s) /
                   ((1 + 0.5 * r) * (1 - r));
    c.behind_own = (0.5 * r * r * r + 0.25 * r * r + 1.5 * r * s * lam) /
                   ((1 + 0.5 * r) * (1 - r));
    c.sojourn = (-0.125 * r * r * r * b + 0.125 * r * r * r * s + 0.25 * r * r * b -
                 0.5 * r * r * s + 0.5 * r * b + r * s + 2 * b + 2 * s) /
                ((1 + 0.5 * r) * (1 - r));
    return c;
}

}  // namespace

TEST_CASE("symmetric closed forms across a small grid") {
    for (double L : {0.2, 0.4, 0.8}) {
        for (double b : {0.5, 1.0, 2.0}) {
            for (double s : {0.25, 1.0}) {
                if (L * b >= 0.95) continue;
                PollingModel m = make_sym2(L, b, s);
                auto sol = solve_stationary_lg(m);
                SymLg c = sym_closed(L / 2, b, s);
                CHECK(sol.before_gate[1] == doctest::Approx(c.before_other).epsilon(1e-9));
                CHECK(sol.before_gate[0] == doctest::Approx(c.before_own).epsilon(1e-9));
                CHECK(sol.behind_gate[0] == doctest::Approx(c.behind_own).epsilon(1e-9));
                CHECK(mean_batch_sojourn_lg(m, sol) ==
                      doctest::Approx(c.sojourn).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("closed-form spot values at the reference point") {
    PollingModel m = make_sym2(0.4, 1, 1);
    auto sol = solve_stationary_lg(m);
    CHECK(sol.before_gate[1] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(sol.before_gate[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
    CHECK(sol.behind_gate[0] == doctest::Approx(0.192 / 0.72).epsilon(1e-9));
    CHECK(mean_batch_sojourn_lg(m, sol) == doctest::Approx(19.0 / 3.0).epsilon(1e-9));
}

TEST_CASE("gated descendant means grow with intervening queues") {
    PollingModel m = make_sym2(0.4, 1, 1);
    // Zero spans: the service itself; one span: one (1 + rho_i) factor.
    CHECK(descendant_service_mean_lg(m, 0, 0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(descendant_service_mean_lg(m, 0, 1) == doctest::Approx(1.2).epsilon(1e-12));
    CHECK(descendant_switch_mean_lg(m, 0, 1) == doctest::Approx(1.2).epsilon(1e-12));
}

TEST_CASE("zero load batch sojourn matches the exhaustive walk") {
    PollingModel m = make_sym2(0.0, 1, 1);
    auto sol = solve_stationary_lg(m);
    CHECK(mean_batch_sojourn_specific_lg(m, sol, {1, 1}) ==
          doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("aggregation identity over the support") {
    for (const auto* id : {"sym2", "model_a", "model_b", "model_c"}) {
        for (double rho : {0.3, 0.7}) {
            PollingModel m = make_builtin(id, rho, 1, 1);
            auto sol = solve_stationary_lg(m);
            double total = 0.0;
            for (const auto& e : m.batch.entries())
                total += e.p * mean_batch_sojourn_specific_lg(m, sol, e.k);
            CHECK(total == doctest::Approx(mean_batch_sojourn_lg(m, sol)).epsilon(1e-10));
        }
    }
}

TEST_CASE("little's law per queue") {
    for (const auto* id : {"sym2", "model_a", "model_b", "model_c"}) {
        PollingModel m = make_builtin(id, 0.6, 1, 1);
        auto sol = solve_stationary_lg(m);
        for (int i = 0; i < m.n; ++i)
            CHECK(m.lambda_q[i] * sol.wait[i] ==
                  doctest::Approx(sol.mean_len[i]).epsilon(1e-9));
    }
}

TEST_CASE("intervisit periods cover the cycle") {
    for (const auto* id : {"sym2", "model_a", "model_c"}) {
        PollingModel m = make_builtin(id, 0.55, 1, 1);
        auto sol = solve_stationary_lg(m);
        double total = 0.0;
        for (double t : sol.theta_mean) total += t;
        CHECK(total == doctest::Approx(m.mean_cycle).epsilon(1e-12));
    }
}

TEST_CASE("gated sojourn dominates exhaustive at the symmetric point") {
    // With equal service and switch-over means the gate costs extra waiting.
    PollingModel m = make_sym2(0.4, 1, 1);
    auto sol = solve_stationary_lg(m);
    CHECK(mean_batch_sojourn_lg(m, sol) > 6.0);
}

TEST_CASE("model a specific batch agrees with the simulator") {
    PollingModel m = make_model_a(0.6);
    auto sol = solve_stationary_lg(m);
    double analytic = mean_batch_sojourn_specific_lg(m, sol, {3, 0, 1});

    SimConfig cfg;
    cfg.replications = 8;
    cfg.batches_per_replication = 60000;
    cfg.seed = 12;
    auto est = simulate(m, Discipline::LocallyGated, cfg);
    bool found = false;
    for (std::size_t c = 0; c < est.class_k.size(); ++c) {
        if (est.class_k[c] == std::vector<int>{3, 0, 1}) {
            found = true;
            CHECK(est.class_T[c].contains(analytic));
        }
    }
    CHECK(found);
}
