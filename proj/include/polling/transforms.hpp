#pragma once

#include <vector>

#include "polling/model.hpp"

namespace polling {

// Pointwise transform machinery for exhaustive and locally-gated service:
// busy-period LST fixed points, descendant-service LSTs, cycle-unrolled
// evaluation of the visit-beginning PGFs, the stationary joint queue-length
// PGF, and batch sojourn-time LSTs. All arguments are real, w >= 0 and PGF
// arguments in [0,1]; locally-gated PGF vectors carry one extra trailing
// coordinate counting the customers behind the visited queue's gate.
struct PgfEval {
    double value = 0.0;
    long iterations = 0;  // unrolled law-of-motion steps
    double residual = 0.0;  // distance of the final argument from all-ones
};

enum class PeriodKind { Visit, Switch };

class TransformEngine {
public:
    explicit TransformEngine(const PollingModel& m);

    const PollingModel& model() const { return m_; }

    // LST of the busy period started by one customer at queue j, including
    // the service of all arrivals to queue j during it (monotone fixed
    // point from 0).
    double busy_period_lst(int j, double w) const;

    // Values of the descendant-service LSTs ending at queue `end`: entry l
    // holds the transform of queue l's tagged service plus all work it
    // recursively generates before the server next starts queue `end`
    // (exhaustive or locally-gated recursion per the discipline).
    std::vector<double> descendant_chain(int end, double w, Discipline d) const;

    // Stationary joint queue-length PGF at the beginning of queue i's visit
    // (exhaustive: z has n coordinates; locally-gated: n + 1, gate last).
    PgfEval visit_begin_pgf(int i, std::vector<double> z, Discipline d) const;

    // Stationary joint queue-length PGF at an arbitrary epoch, exhaustive.
    // The direct service-completion form and the period-mixture form agree;
    // both are exposed for cross-checking.
    double stationary_queue_pgf(const std::vector<double>& z) const;
    double stationary_queue_pgf_mixture(const std::vector<double>& z) const;

    // Sojourn-time LST of batch k conditioned on the arrival falling in a
    // given period. The period is keyed by the queue where the batch's
    // service starts (j): Switch means S_{j-1}; Visit means V_j for
    // exhaustive and V_{j-1} for locally-gated (whose in-visit arrivals are
    // gated to the next cycle).
    double conditioned_sojourn_lst(const std::vector<int>& k, PeriodKind period, int start,
                                   double w, Discipline d) const;

    // Unconditional batch sojourn-time LSTs: specific batch k, and an
    // arbitrary batch drawn from the support.
    double sojourn_lst(const std::vector<int>& k, double w, Discipline d) const;
    double sojourn_lst_arbitrary(double w, Discipline d) const;

private:
    struct Parts;  // per (start, end, w) period factors

    Parts parts_exh(int start, int end, double w) const;
    Parts parts_lg(int start, int end, double w) const;
    Parts parts(int start, int end, double w, Discipline d) const;

    double kpgf(const std::vector<double>& z) const;
    double pr_lst(const Dist& d, double a, double b) const;

    // Busy period of queue j with the other queues' arrivals marked by z:
    // fixed point x = B_j(w + lambda(1 - K(z with z_j := x))). Batches can
    // carry queue-j customers together with marked ones, so the joint PGF
    // cannot be split into the marginal busy period times a separate factor.
    double joint_busy_period(int j, double w, std::vector<double> z) const;

    PgfEval lb_visit_exh(int i, std::vector<double> z) const;
    double lc_visit_exh(int i, std::vector<double> z) const;
    double lb_begin_service_exh(int i, const std::vector<double>& z) const;

    PgfEval lb_visit_lg(int i, std::vector<double> z) const;
    double lc_visit_lg(int i, std::vector<double> z) const;
    double lb_begin_service_lg(int i, const std::vector<double>& z) const;

    const PollingModel& m_;
};

}  // namespace polling
