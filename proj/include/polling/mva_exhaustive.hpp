#pragma once

#include <vector>

#include "polling/model.hpp"

namespace polling {

// Mean value analysis for exhaustive service. The conditioning epochs are
// the intervisit periods theta_j = (S_{j-1}, V_j); the unknowns are the
// mean queue lengths seen by an arrival during each period, solved from an
// n^2 linear system.
struct MvaSolutionExh {
    std::vector<double> theta_mean;  // E(theta_j) = E(S_{j-1}) + rho_j E(C)
    std::vector<double> cond_len;    // [i*n + j]: mean length of queue i during theta_j
    std::vector<double> mean_len;    // time-average waiting customers per queue
    std::vector<double> wait;        // mean waiting time per customer, per queue
};

// Mean service requirement of a customer at queue j together with all the
// work it recursively brings into queues j..  before the server next starts
// queue i. spans gives the number of (1 - rho) factors: cyc(i - j) for
// target i, or n for an explicit full-cycle wrap.
double descendant_service_mean_exh(const PollingModel& m, int j, int spans,
                                   bool residual = false);
// Same for the switch-over following queue j, ending when queue i starts:
// spans = cyc(i - j - 1).
double descendant_switch_mean_exh(const PollingModel& m, int j, int spans,
                                  bool residual = false);

MvaSolutionExh solve_stationary_exh(const PollingModel& m);

// Mean sojourn time of a specific batch k (arrival to last service
// completion), and the mean over an arbitrary batch from the support.
double mean_batch_sojourn_specific_exh(const PollingModel& m, const MvaSolutionExh& sol,
                                       const std::vector<int>& k);
double mean_batch_sojourn_exh(const PollingModel& m, const MvaSolutionExh& sol);

}  // namespace polling
