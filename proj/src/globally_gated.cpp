#include "polling/globally_gated.hpp"

#include <cmath>

#include "polling/cyclic.hpp"
#include "polling/numdiff.hpp"

namespace polling {

GgCycle cycle_moments_gg(const PollingModel& m) {
    GgCycle c;
    c.mean = m.mean_cycle;
    // Second moment of the stationary cycle: squared switch-over total,
    // work carried over from the previous cycle, and the per-cycle service
    // variability including the batch cross-moments.
    double sum = m.second_moment_switch_total +
                 2.0 * m.rho * m.mean_switch_total * m.mean_cycle;
    for (int j = 0; j < m.n; ++j)
        sum += m.lambda_q[j] * m.service[j].second_moment() * m.mean_cycle;
    for (int i = 0; i < m.n; ++i) {
        for (int j = 0; j < m.n; ++j) {
            double kij = (i == j) ? m.batch.same_queue_pairs(i) : m.batch.joint_moment(i, j);
            sum += m.lambda * kij * m.service[i].mean() * m.service[j].mean() * m.mean_cycle;
        }
    }
    c.second_moment = sum / (1.0 - m.rho * m.rho);
    c.residual = c.second_moment / (2.0 * c.mean);
    return c;
}

namespace {

int last_nonempty(const std::vector<int>& k) {
    int end = -1;
    for (int i = 0; i < static_cast<int>(k.size()); ++i) {
        if (k[i] < 0) fail_invalid("negative batch component");
        if (k[i] > 0) end = i;
    }
    if (end < 0) fail_invalid("batch sojourn of the empty batch is undefined");
    return end;
}

}  // namespace

double mean_batch_sojourn_specific_gg(const PollingModel& m, const std::vector<int>& k) {
    if (static_cast<int>(k.size()) != m.n) fail_invalid("batch vector length mismatch");
    int end = last_nonempty(k);
    GgCycle c = cycle_moments_gg(m);
    // The batch waits out the residual of the gate cycle, then the previous
    // cycle's full load up to its last queue (hence the doubled loads), its
    // own queue's gated load, the preceding switch-overs, and its own work.
    double factor = 1.0 + m.rho_q[end];
    for (int j = 0; j < end; ++j) factor += 2.0 * m.rho_q[j];
    double total = factor * c.residual;
    for (int j = 0; j < end; ++j) total += m.switchover[j].mean();
    for (int j = 0; j <= end; ++j) total += k[j] * m.service[j].mean();
    return total;
}

double mean_batch_sojourn_gg(const PollingModel& m) {
    GgCycle c = cycle_moments_gg(m);
    double total = 0.0;
    for (int end = 0; end < m.n; ++end) {
        double p = m.batch.completion_probability(0, end);
        if (p <= 0.0) continue;
        double factor = 1.0 + m.rho_q[end];
        for (int j = 0; j < end; ++j) factor += 2.0 * m.rho_q[j];
        double part = factor * c.residual;
        for (int j = 0; j < end; ++j) part += m.switchover[j].mean();
        total += p * part;
    }
    for (int j = 0; j < m.n; ++j) total += m.batch.mean(j) * m.service[j].mean();
    return total;
}

std::vector<double> wait_gg(const PollingModel& m) {
    GgCycle c = cycle_moments_gg(m);
    std::vector<double> w(m.n, 0.0);
    for (int i = 0; i < m.n; ++i) {
        double factor = 1.0 + m.rho_q[i];
        for (int j = 0; j < i; ++j) factor += 2.0 * m.rho_q[j];
        w[i] = factor * c.residual;
        for (int j = 0; j < i; ++j) w[i] += m.switchover[j].mean();
        // Batch mates served before a randomly tagged customer of queue i:
        // all mates in earlier queues, half the same-queue mates.
        double ek = m.batch.mean(i);
        if (ek > 0.0) {
            for (int j = 0; j < i; ++j)
                w[i] += m.batch.joint_moment(j, i) / ek * m.service[j].mean();
            w[i] += m.batch.same_queue_pairs(i) / (2.0 * ek) * m.service[i].mean();
        }
    }
    return w;
}

namespace {

double switch_total_lst(const PollingModel& m, double w) {
    double p = 1.0;
    for (int j = 0; j < m.n; ++j) p *= m.switchover[j].lst(w);
    return p;
}

// One application of the cycle functional: the load generated within a
// cycle of "length argument" w.
double cycle_step(const PollingModel& m, double w) {
    std::vector<double> z(m.n);
    for (int j = 0; j < m.n; ++j) z[j] = m.service[j].lst(w);
    return m.lambda * (1.0 - m.batch.pgf(z));
}

}  // namespace

double cycle_lst_gg(const PollingModel& m, double w) {
    if (!m.has_lst()) fail_invalid("model has a moments-only distribution; no transforms");
    double product = 1.0;
    double arg = w;
    for (long iter = 0; iter < 100000; ++iter) {
        if (std::abs(arg) < 1e-14) return product;
        product *= switch_total_lst(m, arg);
        arg = cycle_step(m, arg);
    }
    fail_numerical("cycle LST iteration did not converge");
}

namespace {

// Difference quotient of the cycle LST between the past-cycle argument wp
// and the residual-cycle argument wr, normalized by E(C); equals the joint
// past/residual transform. The singularity at wr == wp is removable.
double cycle_past_residual(const PollingModel& m, double wp, double wr) {
    if (std::abs(wr - wp) < 1e-9) {
        double mid = 0.5 * (wp + wr);
        double h = 1e-5;
        auto f = [&](double x) { return cycle_lst_gg(m, x); };
        return -one_sided_derivative(f, mid, h) / m.mean_cycle;
    }
    return (cycle_lst_gg(m, wp) - cycle_lst_gg(m, wr)) / (m.mean_cycle * (wr - wp));
}

// Vector (B_1(w), .., B_i(w), 1, .., 1): services of the batch members up
// to and including queue `upto` (exclusive bound upto, 0-based).
std::vector<double> service_prefix(const PollingModel& m, int upto, double w) {
    std::vector<double> z(m.n, 1.0);
    for (int j = 0; j < upto; ++j) z[j] = m.service[j].lst(w);
    return z;
}

double gg_bracket(const PollingModel& m, int end, double w) {
    std::vector<double> zi = service_prefix(m, end + 1, w);
    std::vector<double> zprev = service_prefix(m, end, w);
    double wp = m.lambda * (1.0 - m.batch.pgf(zi));
    double wr = w + m.lambda * (1.0 - m.batch.pgf(zprev));
    double v = cycle_past_residual(m, wp, wr);
    for (int j = 0; j < end; ++j) v *= m.switchover[j].lst(w);
    return v;
}

}  // namespace

double sojourn_lst_gg(const PollingModel& m, const std::vector<int>& k, double w) {
    if (static_cast<int>(k.size()) != m.n) fail_invalid("batch vector length mismatch");
    int end = last_nonempty(k);
    if (w == 0.0) return 1.0;
    double v = gg_bracket(m, end, w);
    for (int j = 0; j <= end; ++j) {
        double b = m.service[j].lst(w);
        for (int c = 0; c < k[j]; ++c) v *= b;
    }
    return v;
}

double sojourn_lst_gg_arbitrary(const PollingModel& m, double w) {
    if (w == 0.0) return 1.0;
    double total = 0.0;
    for (int end = 0; end < m.n; ++end) {
        double p = m.batch.completion_probability(0, end);
        if (p <= 0.0) continue;
        std::vector<double> zi = service_prefix(m, end + 1, w);
        total += p * gg_bracket(m, end, w) * m.batch.conditional_pgf(zi, 0, end);
    }
    return total;
}

}  // namespace polling
