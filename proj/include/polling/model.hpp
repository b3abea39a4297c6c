#pragma once

#include <string>
#include <vector>

#include "polling/batch.hpp"
#include "polling/distribution.hpp"
#include "polling/error.hpp"

namespace polling {

enum class Discipline { Exhaustive, LocallyGated, GloballyGated };

inline Discipline discipline_from_string(const std::string& s) {
    if (s == "ex" || s == "exhaustive") return Discipline::Exhaustive;
    if (s == "lg" || s == "locally_gated" || s == "locally-gated") return Discipline::LocallyGated;
    if (s == "gg" || s == "globally_gated" || s == "globally-gated") return Discipline::GloballyGated;
    fail_invalid("unknown discipline: " + s);
}

inline const char* discipline_name(Discipline d) {
    switch (d) {
        case Discipline::Exhaustive: return "exhaustive";
        case Discipline::LocallyGated: return "locally-gated";
        case Discipline::GloballyGated: return "globally-gated";
    }
    return "?";
}

// Cyclic polling system: a single server visits queues 0..n-1 in order,
// paying a switch-over after every visit. Batches arrive in a Poisson
// stream of rate lambda; each batch scatters customers over the queues
// according to the batch support. Stability requires total load < 1.
struct PollingModel {
    int n = 0;
    double lambda = 0.0;  // batch arrival rate
    Discipline discipline = Discipline::Exhaustive;
    std::vector<Dist> service;     // per queue
    std::vector<Dist> switchover;  // switch-over following each queue's visit
    BatchSupport batch;

    // Derived at validation.
    std::vector<double> lambda_q;  // customer arrival rate per queue
    std::vector<double> rho_q;     // per-queue load
    double rho = 0.0;
    double mean_switch_total = 0.0;        // E(S)
    double second_moment_switch_total = 0.0;  // E(S^2) of the independent sum
    double mean_cycle = 0.0;               // E(C) = E(S)/(1 - rho)

    static constexpr int kMaxQueues = 64;

    PollingModel& validate() {
        if (n < 1) fail_invalid("queue count must be at least 1");
        if (n > kMaxQueues) fail_invalid("queue count exceeds the supported maximum");
        if (lambda < 0.0) fail_invalid("negative arrival rate");
        if (static_cast<int>(service.size()) != n || static_cast<int>(switchover.size()) != n)
            fail_invalid("per-queue distribution lists do not match the queue count");
        if (batch.queues() != n) fail_invalid("batch support dimension mismatch");
        for (int i = 0; i < n; ++i) {
            if (service[i].mean() <= 0.0)
                fail_invalid("service mean must be positive");
        }
        lambda_q.assign(n, 0.0);
        rho_q.assign(n, 0.0);
        rho = 0.0;
        for (int i = 0; i < n; ++i) {
            lambda_q[i] = lambda * batch.mean(i);
            rho_q[i] = lambda_q[i] * service[i].mean();
            rho += rho_q[i];
        }
        if (rho >= 1.0 - 1e-12) fail_unstable("total load is " + std::to_string(rho));
        mean_switch_total = 0.0;
        for (int i = 0; i < n; ++i) mean_switch_total += switchover[i].mean();
        // Second moment of the independent sum of the n switch-overs.
        second_moment_switch_total = 0.0;
        for (int i = 0; i < n; ++i) {
            second_moment_switch_total += switchover[i].second_moment();
            for (int j = 0; j < n; ++j) {
                if (j != i)
                    second_moment_switch_total += switchover[i].mean() * switchover[j].mean();
            }
        }
        if (mean_switch_total <= 0.0)
            fail_invalid("total switch-over time must be positive");
        mean_cycle = mean_switch_total / (1.0 - rho);
        return *this;
    }

    bool has_lst() const {
        for (const Dist& d : service)
            if (!d.has_lst()) return false;
        for (const Dist& d : switchover)
            if (!d.has_lst()) return false;
        return true;
    }

    bool has_sampling() const { return has_lst(); }
};

// JSON config ingestion (see README for the schema).
PollingModel model_from_json_text(const std::string& text);
PollingModel model_from_json_file(const std::string& path);

// Built-in models. sym2 is the symmetric two-queue system (pair batches,
// exponential service mean b, exponential switch-over mean s, batch rate
// Lambda/2 so the customer rate is Lambda). Models a, b, c are the three
// heterogeneous benchmark systems, parameterized by total load.
PollingModel make_sym2(double Lambda, double b, double s);
PollingModel make_model_a(double rho);
PollingModel make_model_b(double rho);
PollingModel make_model_c(double rho);
// Single queue with batch sizes 1 or 2 (p = 1/2 each), exponential service
// mean 0.5, exponential switch-over (vacation) mean 1, load 0.5.
PollingModel make_vacation1();

PollingModel make_builtin(const std::string& id, double rho_or_lambda, double b, double s);

}  // namespace polling
