#pragma once

#include <vector>

#include "polling/model.hpp"

namespace polling {

// Mean value analysis for locally-gated service. Intervisit periods pair
// the visit with the following switch-over: theta_j = (V_j, S_j). Unknowns
// are the before-gate mean queue lengths per period plus, for the visited
// queue, the mean number already behind the gate: n^2 + n unknowns.
struct MvaSolutionLG {
    std::vector<double> theta_mean;   // E(theta_j) = rho_j E(C) + E(S_j)
    std::vector<double> before_gate;  // [i*n + j]: before-gate length of queue i during theta_j
    std::vector<double> behind_gate;  // [i]: behind-gate length of queue i during theta_i
    std::vector<double> mean_len;     // time-average waiting customers per queue
    std::vector<double> wait;         // mean waiting time per customer, per queue
};

// Gated descendant means: a customer served at queue j during some visit
// drags along one extra (1 + rho) growth factor per intervening queue until
// the server next starts queue i. spans = cyc(i - j - 1) factors.
double descendant_service_mean_lg(const PollingModel& m, int j, int spans,
                                  bool residual = false);
double descendant_switch_mean_lg(const PollingModel& m, int j, int spans,
                                 bool residual = false);

MvaSolutionLG solve_stationary_lg(const PollingModel& m);

double mean_batch_sojourn_specific_lg(const PollingModel& m, const MvaSolutionLG& sol,
                                      const std::vector<int>& k);
double mean_batch_sojourn_lg(const PollingModel& m, const MvaSolutionLG& sol);

}  // namespace polling
