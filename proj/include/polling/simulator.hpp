#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "polling/model.hpp"

namespace polling {

struct SimConfig {
    int replications = 20;
    long batches_per_replication = 200000;
    double warmup_fraction = 0.1;  // leading batches discarded, per replication
    std::uint64_t seed = 1;
    std::vector<double> lst_probes;               // omega values for E[e^{-w T}]
    std::vector<std::vector<double>> pgf_probes;  // z vectors sampled at queue 0 visit beginnings
    std::string trace_path;                       // optional per-batch CSV trace
};

struct CI {
    double mean = 0.0;
    double half = 0.0;  // 99% half-width (Student-t across replications)

    bool contains(double v) const { return v >= mean - half && v <= mean + half; }
};

struct SimEstimate {
    CI mean_T;                   // batch sojourn time
    CI mean_C;                   // cycle time (queue 0 visit beginnings)
    std::vector<CI> mean_W;      // per-queue customer waiting time
    std::vector<CI> mean_L;      // per-queue time-average number waiting
    std::vector<CI> mean_L_content;  // waiting plus in-service
    std::vector<CI> busy_fraction;   // fraction of time serving each queue
    std::vector<CI> empirical_lst;   // per lst_probes entry
    std::vector<CI> visit_pgf;       // per pgf_probes entry
    std::vector<std::vector<int>> class_k;  // batch support points
    std::vector<CI> class_T;                // E(T_k) per support point
};

// Event-driven simulation of the polling system under the given discipline.
// Deterministic for fixed (model, discipline, config); replications run in
// parallel but aggregate in replication order.
SimEstimate simulate(const PollingModel& m, Discipline d, const SimConfig& cfg);

}  // namespace polling
