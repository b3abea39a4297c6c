#include "polling/mva_locally_gated.hpp"

#include "polling/cyclic.hpp"
#include "polling/linalg.hpp"

#include "affine.hpp"

namespace polling {

namespace {

double growth(const PollingModel& m, int start, int spans) {
    double p = 1.0;
    for (int t = 0; t < spans; ++t) p *= 1.0 + m.rho_q[cyc(start + t, m.n)];
    return p;
}

}  // namespace

double descendant_service_mean_lg(const PollingModel& m, int j, int spans, bool residual) {
    double base = residual ? m.service[j].residual_mean() : m.service[j].mean();
    return base * growth(m, j + 1, spans);
}

double descendant_switch_mean_lg(const PollingModel& m, int j, int spans, bool residual) {
    double base = residual ? m.switchover[j].residual_mean() : m.switchover[j].mean();
    return base * growth(m, j + 1, spans);
}

namespace {

// Locally-gated MVA assembler. Unknowns: xt[i*n + j], the before-gate mean
// length of queue i during theta_j = (V_j, S_j), plus xh[i], the mean
// number behind the gate of queue i during its own visit period.
struct LgAssembler {
    const PollingModel& m;
    int n;
    int dim;                    // n*n + n unknowns
    std::vector<double> theta;  // E(theta_j) = rho_j E(C) + E(S_j)

    explicit LgAssembler(const PollingModel& model)
        : m(model), n(model.n), dim(model.n * model.n + model.n) {
        theta.resize(n);
        for (int j = 0; j < n; ++j)
            theta[j] = m.rho_q[j] * m.mean_cycle + m.switchover[j].mean();
    }

    int idt(int i, int j) const { return i * n + j; }
    int idh(int i) const { return n * n + i; }

    double visit_mean(int j) const { return m.rho_q[j] * m.mean_cycle; }

    // Residual of the compound period theta_a..theta_b (possibly the full
    // cycle) unrolled into the work preceding the start of queue b+1's
    // visit. Under gating a customer served at queue q grows by a
    // (1 + rho) factor per intervening queue until queue b+1 starts.
    Affine residual_theta(int a, int b, int tagged) const {
        Affine out(dim);
        int len = cyc_dist(a, b, n) + 1;
        double span = 0.0;
        for (int t = 0; t < len; ++t) span += theta[cyc(a + t, n)];
        double ek_tag = m.batch.mean(tagged);
        for (int t = 0; t < len; ++t) {
            int l = cyc(a + t, n);
            double w = theta[l] / span;
            int reach = cyc_dist(l, b, n);  // (1+rho) factors from l to b+1
            out.c += w / theta[l] *
                     (visit_mean(l) * (descendant_service_mean_lg(m, l, reach, true) +
                                       descendant_switch_mean_lg(m, l, reach)) +
                      m.switchover[l].mean() * descendant_switch_mean_lg(m, l, reach, true));
            out.a[idh(l)] += w * descendant_service_mean_lg(m, l, reach);
            for (int u = 1; u <= reach; ++u) {
                int q = cyc(l + u, n);
                double coeff = w * descendant_service_mean_lg(m, q, cyc_dist(q, b, n));
                if (ek_tag > 0.0) {
                    double mates = (q == tagged) ? m.batch.same_queue_pairs(q)
                                                 : m.batch.joint_moment(q, tagged);
                    out.c += coeff * mates / ek_tag;
                }
                out.a[idt(q, l)] += coeff;
                out.c += w * descendant_switch_mean_lg(m, q, cyc_dist(q, b, n));
            }
        }
        return out;
    }
};

}  // namespace

MvaSolutionLG solve_stationary_lg(const PollingModel& m) {
    const int n = m.n;
    LgAssembler as(m);
    const int dim = as.dim;
    std::vector<double> A(static_cast<std::size_t>(dim) * dim, 0.0);
    std::vector<double> rhs(dim, 0.0);

    auto put_row = [&](int row, const Affine& lhs, double rhs_val) {
        for (int c = 0; c < dim; ++c) A[static_cast<std::size_t>(row) * dim + c] = lhs.a[c];
        rhs[row] = rhs_val - lhs.c;
    };

    int row = 0;
    // Before-gate lengths: an arrival during theta_i..theta_j sees the
    // Poisson arrivals over the age of that compound period (spans start at
    // the tagged queue's own period under gating).
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            Affine lhs(dim);
            int len = cyc_dist(i, j, n) + 1;
            double span = 0.0;
            for (int t = 0; t < len; ++t) span += as.theta[cyc(i + t, n)];
            for (int t = 0; t < len; ++t) {
                int l = cyc(i + t, n);
                lhs.a[as.idt(i, l)] += as.theta[l] / span;
            }
            Affine res = as.residual_theta(i, j, i);
            double li = m.lambda_q[i];
            for (int c = 0; c < dim; ++c) lhs.a[c] -= li * res.a[c];
            put_row(row++, lhs, li * res.c);
        }
    }
    // Waiting-time balance per queue (Little's law on the gated waiting
    // decomposition), which brings in the behind-gate unknowns.
    for (int i = 0; i < n; ++i) {
        Affine lhs(dim);
        double li = m.lambda_q[i];
        for (int j = 0; j < n; ++j)
            lhs.a[as.idt(i, j)] += (1.0 - m.rho_q[i]) * as.theta[j] / m.mean_cycle;
        lhs.a[as.idh(i)] += as.theta[i] / m.mean_cycle;
        Affine res = as.residual_theta(i, i - 1, i);
        for (int c = 0; c < dim; ++c) lhs.a[c] -= li * res.a[c];
        double mates = m.batch.mean(i) > 0.0
                           ? m.batch.same_queue_pairs(i) / (2.0 * m.batch.mean(i))
                           : 0.0;
        put_row(row++, lhs, li * res.c + m.rho_q[i] * mates);
    }

    MvaSolutionLG sol;
    sol.theta_mean = as.theta;
    std::vector<double> x = solve_linear(std::move(A), std::move(rhs));
    sol.before_gate.assign(x.begin(), x.begin() + n * n);
    sol.behind_gate.assign(x.begin() + n * n, x.end());
    sol.mean_len.assign(n, 0.0);
    sol.wait.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double before = 0.0;
        for (int j = 0; j < n; ++j)
            before += as.theta[j] / m.mean_cycle * sol.before_gate[as.idt(i, j)];
        double mates = m.batch.mean(i) > 0.0
                           ? m.batch.same_queue_pairs(i) / (2.0 * m.batch.mean(i))
                           : 0.0;
        Affine res = as.residual_theta(i, i - 1, i);
        sol.wait[i] = before * m.service[i].mean() + mates * m.service[i].mean() +
                      res.value(x);
        sol.mean_len[i] = m.lambda_q[i] * sol.wait[i];
    }
    return sol;
}

namespace {

// E(theta_{j-1}) * E(T^(theta_{j-1})) for a batch starting service at queue
// j and finishing at queue `end`. counts holds the batch's per-queue sizes
// (specific k) or the conditional means (arbitrary batch).
double weighted_period_sojourn(const PollingModel& m, const MvaSolutionLG& sol, int j,
                               int end, const std::vector<double>& counts) {
    const int n = m.n;
    int p = cyc(j - 1, n);
    int reach = cyc_dist(j, end, n);  // (1+rho) factors from p's period to end
    double total =
        m.rho_q[p] * m.mean_cycle * (descendant_service_mean_lg(m, p, reach, true) +
                                     descendant_switch_mean_lg(m, p, reach)) +
        m.switchover[p].mean() * descendant_switch_mean_lg(m, p, reach, true);
    double inner = sol.behind_gate[p] * descendant_service_mean_lg(m, p, reach);
    for (int u = 1; u <= reach; ++u) {
        int q = cyc(j + u - 1, n);
        int d = cyc_dist(q, end, n) - 1;  // factors between q's visit and end
        inner += (sol.before_gate[q * n + p] + counts[q]) *
                     descendant_service_mean_lg(m, q, d) +
                 descendant_switch_mean_lg(m, q, d);
    }
    inner += (sol.before_gate[end * n + p] + counts[end]) * m.service[end].mean();
    return total + sol.theta_mean[p] * inner;
}

}  // namespace

double mean_batch_sojourn_specific_lg(const PollingModel& m, const MvaSolutionLG& sol,
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

double mean_batch_sojourn_lg(const PollingModel& m, const MvaSolutionLG& sol) {
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
