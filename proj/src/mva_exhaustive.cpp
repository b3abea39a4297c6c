#include "polling/mva_exhaustive.hpp"

#include "polling/cyclic.hpp"
#include "polling/linalg.hpp"

#include "affine.hpp"

namespace polling {

namespace {

double shrink(const PollingModel& m, int start, int spans) {
    double p = 1.0;
    for (int t = 0; t < spans; ++t) p *= 1.0 - m.rho_q[cyc(start + t, m.n)];
    return p;
}

}  // namespace

double descendant_service_mean_exh(const PollingModel& m, int j, int spans, bool residual) {
    double base = residual ? m.service[j].residual_mean() : m.service[j].mean();
    return base / shrink(m, j, spans);
}

double descendant_switch_mean_exh(const PollingModel& m, int j, int spans, bool residual) {
    double base = residual ? m.switchover[j].residual_mean() : m.switchover[j].mean();
    return base / shrink(m, j + 1, spans);
}

namespace {

// Exhaustive MVA assembler. The unknowns x[i*n + j] are the mean numbers
// waiting in queue i during intervisit period theta_j = (S_{j-1}, V_j).
struct ExhAssembler {
    const PollingModel& m;
    int n;
    std::vector<double> theta;  // E(theta_j)

    explicit ExhAssembler(const PollingModel& model) : m(model), n(model.n) {
        theta.resize(n);
        for (int j = 0; j < n; ++j)
            theta[j] = m.switchover[cyc(j - 1, n)].mean() + m.rho_q[j] * m.mean_cycle;
    }

    int id(int i, int j) const { return i * n + j; }

    double visit_mean(int j) const { return m.rho_q[j] * m.mean_cycle; }

    // Expected residual of the compound period theta_a..theta_b seen by a
    // Poisson arrival, unrolled into the work the arrival must still wait
    // out before the server next starts queue b+1. Affine in the unknowns
    // (via the queue lengths seen at the arrival epoch). The batch-mate
    // term is referred to the tagged customer's queue.
    Affine residual_theta(int a, int b, int tagged) const {
        Affine out(n * n);
        int len = cyc_dist(a, b, n) + 1;
        double span = 0.0;
        for (int t = 0; t < len; ++t) span += theta[cyc(a + t, n)];
        double ek_tag = m.batch.mean(tagged);
        for (int t = 0; t < len; ++t) {
            int l = cyc(a + t, n);
            double w = theta[l] / span;
            int prev = cyc(l - 1, n);
            // Residual of the period itself: either the visit's residual
            // descendant service or the switch-over's.
            out.c += w / theta[l] *
                     (visit_mean(l) * descendant_service_mean_exh(m, l, cyc_dist(l, b + 1, n), true) +
                      m.switchover[prev].mean() *
                          descendant_switch_mean_exh(m, prev, cyc_dist(prev + 1, b + 1, n), true));
            // Customers already waiting in queues l..b, plus the tagged
            // customer's batch mates arriving with it.
            for (int u = 0; u <= cyc_dist(l, b, n); ++u) {
                int q = cyc(l + u, n);
                double coeff = w * descendant_service_mean_exh(m, q, cyc_dist(q, b + 1, n));
                if (ek_tag > 0.0) {
                    double mates = (q == tagged) ? m.batch.same_queue_pairs(q)
                                                 : m.batch.joint_moment(q, tagged);
                    out.c += coeff * mates / ek_tag;
                }
                out.a[id(q, l)] += coeff;
            }
            // Switch-overs still to be traversed before queue b+1 starts.
            for (int u = 1; u <= cyc_dist(l, b, n); ++u) {
                int q = cyc(l + u - 1, n);
                out.c += w * descendant_switch_mean_exh(m, q, cyc_dist(q + 1, b + 1, n));
            }
        }
        return out;
    }
};

}  // namespace

MvaSolutionExh solve_stationary_exh(const PollingModel& m) {
    const int n = m.n;
    ExhAssembler as(m);
    const int dim = n * n;
    std::vector<double> A(static_cast<std::size_t>(dim) * dim, 0.0);
    std::vector<double> rhs(dim, 0.0);

    auto put_row = [&](int row, const Affine& lhs, double rhs_val) {
        for (int c = 0; c < dim; ++c) A[static_cast<std::size_t>(row) * dim + c] = lhs.a[c];
        rhs[row] = rhs_val - lhs.c;
    };

    int row = 0;
    // Arrivals during theta_{i+1}..theta_j see, on average at queue i, the
    // Poisson arrivals over the age of that compound period.
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            Affine lhs(dim);
            int len = cyc_dist(i + 1, j, n) + 1;
            double span = 0.0;
            for (int t = 0; t < len; ++t) span += as.theta[cyc(i + 1 + t, n)];
            for (int t = 0; t < len; ++t) {
                int l = cyc(i + 1 + t, n);
                lhs.a[as.id(i, l)] += as.theta[l] / span;
            }
            Affine res = as.residual_theta(i + 1, j, i);
            double li = m.lambda_q[i];
            for (int c = 0; c < dim; ++c) lhs.a[c] -= li * res.a[c];
            put_row(row++, lhs, li * res.c);
        }
    }
    // Per-queue waiting-time balance (Little's law applied to the waiting
    // decomposition): closes the system with one equation per queue.
    for (int i = 0; i < n; ++i) {
        Affine lhs(dim);
        double li = m.lambda_q[i];
        int prev = cyc(i - 1, n);
        double out_frac = 1.0 - as.theta[i] / m.mean_cycle;
        for (int j = 0; j < n; ++j)
            lhs.a[as.id(i, j)] += (1.0 - m.rho_q[i]) * as.theta[j] / m.mean_cycle;
        Affine res = as.residual_theta(i + 1, i - 1, i);
        for (int c = 0; c < dim; ++c) lhs.a[c] -= li * out_frac * res.a[c];
        double mates = m.batch.mean(i) > 0.0
                           ? m.batch.same_queue_pairs(i) / (2.0 * m.batch.mean(i))
                           : 0.0;
        double rhs_val = li * (mates * m.service[i].mean() +
                               m.rho_q[i] * m.service[i].residual_mean() +
                               m.switchover[prev].mean() / m.mean_cycle *
                                   m.switchover[prev].residual_mean() +
                               out_frac * (res.c + m.switchover[prev].mean()));
        put_row(row++, lhs, rhs_val);
    }

    MvaSolutionExh sol;
    sol.theta_mean = as.theta;
    sol.cond_len = solve_linear(std::move(A), std::move(rhs));
    sol.mean_len.assign(n, 0.0);
    sol.wait.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j)
            sol.mean_len[i] += as.theta[j] / m.mean_cycle * sol.cond_len[as.id(i, j)];
        int prev = cyc(i - 1, n);
        double mates = m.batch.mean(i) > 0.0
                           ? m.batch.same_queue_pairs(i) / (2.0 * m.batch.mean(i))
                           : 0.0;
        Affine res = as.residual_theta(i + 1, i - 1, i);
        sol.wait[i] = sol.mean_len[i] * m.service[i].mean() +
                      mates * m.service[i].mean() +
                      m.rho_q[i] * m.service[i].residual_mean() +
                      m.switchover[prev].mean() / m.mean_cycle *
                          m.switchover[prev].residual_mean() +
                      (1.0 - as.theta[i] / m.mean_cycle) *
                          (res.value(sol.cond_len) + m.switchover[prev].mean());
    }
    return sol;
}

namespace {

// E(theta_j) * E(T^(theta_j)) for a batch whose service ends at queue `end`
// when started at queue j. The extra per-queue counts come either from the
// batch itself (specific k) or from the conditional batch means.
double weighted_period_sojourn(const PollingModel& m, const MvaSolutionExh& sol, int j,
                               int end, const std::vector<double>& counts) {
    const int n = m.n;
    int prev = cyc(j - 1, n);
    double total =
        m.rho_q[j] * m.mean_cycle *
            descendant_service_mean_exh(m, j, cyc_dist(j, end, n), true) +
        m.switchover[prev].mean() *
            descendant_switch_mean_exh(m, prev, cyc_dist(prev + 1, end, n), true);
    double inner = 0.0;
    for (int u = 0; u <= cyc_dist(j, end, n); ++u) {
        int l = cyc(j + u, n);
        inner += (sol.cond_len[l * n + j] + counts[l]) *
                 descendant_service_mean_exh(m, l, cyc_dist(l, end, n));
    }
    for (int u = 1; u <= cyc_dist(j, end, n); ++u) {
        int q = cyc(j + u - 1, n);
        inner += descendant_switch_mean_exh(m, q, cyc_dist(q + 1, end, n));
    }
    return total + sol.theta_mean[j] * inner;
}

}  // namespace

double mean_batch_sojourn_specific_exh(const PollingModel& m, const MvaSolutionExh& sol,
                                       const std::vector<int>& k) {
    const int n = m.n;
    if (static_cast<int>(k.size()) != n) fail_invalid("batch vector length mismatch");
    bool any = false;
    for (int c : k) {
        if (c < 0) fail_invalid("negative batch component");
        if (c > 0) any = true;
    }
    if (!any) fail_invalid("batch sojourn of the empty batch is undefined");
    std::vector<double> counts(k.begin(), k.end());
    double total = 0.0;
    for (int j = 0; j < n; ++j) {
        int end = m.batch.completion_end(j, k);
        total += weighted_period_sojourn(m, sol, j, end, counts);
    }
    return total / m.mean_cycle;
}

double mean_batch_sojourn_exh(const PollingModel& m, const MvaSolutionExh& sol) {
    const int n = m.n;
    double total = 0.0;
    std::vector<double> counts(n, 0.0);
    for (int j = 0; j < n; ++j) {
        for (int end = 0; end < n; ++end) {
            double p = m.batch.completion_probability(j, end);
            if (p <= 0.0) continue;
            for (int l = 0; l < n; ++l) counts[l] = m.batch.conditional_mean(l, j, end);
            total += p * weighted_period_sojourn(m, sol, j, end, counts);
        }
    }
    return total / m.mean_cycle;
}

}  // namespace polling
