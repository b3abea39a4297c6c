#pragma once

#include <vector>

#include "polling/model.hpp"

namespace polling {

// Globally-gated service: all gates close at the visit beginning of the
// reference queue (queue 0). Every batch present at a gate closing is
// served in the following cycle, which makes means and transforms closed
// forms in the cycle-time distribution.
struct GgCycle {
    double mean = 0.0;           // E(C)
    double second_moment = 0.0;  // E(C^2)
    double residual = 0.0;       // E(C^R) = E(C^P) = E(C^2)/2E(C)
};

GgCycle cycle_moments_gg(const PollingModel& m);

double mean_batch_sojourn_specific_gg(const PollingModel& m, const std::vector<int>& k);
double mean_batch_sojourn_gg(const PollingModel& m);

// Mean waiting time per customer at each queue, and the matching
// time-average number waiting (Little's law).
std::vector<double> wait_gg(const PollingModel& m);

// Stationary cycle-time LST by unrolling the functional equation
// C(w) = S(w) C(lambda - lambda K(B_1(w), .., B_N(w))) into an infinite
// product; truncated when the iterated argument drops below 1e-14.
double cycle_lst_gg(const PollingModel& m, double w);

// Batch sojourn-time LSTs: for a specific batch k and for an arbitrary
// batch drawn from the support.
double sojourn_lst_gg(const PollingModel& m, const std::vector<int>& k, double w);
double sojourn_lst_gg_arbitrary(const PollingModel& m, double w);

}  // namespace polling
