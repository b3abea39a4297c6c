#include "polling/transforms.hpp"

#include <cmath>

#include "polling/cyclic.hpp"
#include "polling/numdiff.hpp"

namespace polling {

namespace {

constexpr double kFixedPointTol = 1e-14;
constexpr long kFixedPointCap = 1000000;
constexpr long kUnrollCap = 1000000;

double max_dev_from_one(const std::vector<double>& z) {
    double d = 0.0;
    for (double v : z) d = std::max(d, std::abs(1.0 - v));
    return d;
}

// Entries of the chain on the cyclic span a..e, ones elsewhere. The empty
// span a == e+1 yields the all-ones vector.
std::vector<double> span_vector(const std::vector<double>& chain, int a, int e, int n) {
    std::vector<double> v(n, 1.0);
    if (a == cyc(e + 1, n)) return v;
    for (int u = 0; u <= cyc_dist(a, e, n); ++u) {
        int q = cyc(a + u, n);
        v[q] = chain[q];
    }
    return v;
}

}  // namespace

TransformEngine::TransformEngine(const PollingModel& m) : m_(m) {
    if (!m.has_lst())
        fail_invalid("model has a moments-only distribution; no transforms");
}

double TransformEngine::kpgf(const std::vector<double>& z) const {
    // Locally-gated vectors carry a trailing gate coordinate; the batch PGF
    // only sees the first n.
    if (static_cast<int>(z.size()) == m_.n) return m_.batch.pgf(z);
    return m_.batch.pgf(std::vector<double>(z.begin(), z.begin() + m_.n));
}

double TransformEngine::busy_period_lst(int j, double w) const {
    double x = 0.0, gap = 1.0;
    for (long it = 0; it < kFixedPointCap; ++it) {
        double next = m_.service[j].lst(w + m_.lambda * (1.0 - m_.batch.marginal_pgf(j, x)));
        double step = std::abs(next - x);
        x = next;
        // Converged once the step hits zero or stalls at roundoff level.
        if (step == 0.0 || (step < kFixedPointTol && step >= gap)) return x;
        gap = step;
    }
    fail_numerical("busy-period fixed point did not converge");
}

double TransformEngine::joint_busy_period(int j, double w, std::vector<double> z) const {
    z[j] = 0.0;
    double gap = 1.0;
    for (long it = 0; it < kFixedPointCap; ++it) {
        double next = m_.service[j].lst(w + m_.lambda * (1.0 - m_.batch.pgf(z)));
        double step = std::abs(next - z[j]);
        z[j] = next;
        if (step == 0.0 || (step < kFixedPointTol && step >= gap)) return z[j];
        gap = step;
    }
    fail_numerical("busy-period fixed point did not converge");
}

std::vector<double> TransformEngine::descendant_chain(int end, double w, Discipline d) const {
    const int n = m_.n;
    std::vector<double> val(n, 1.0);
    std::vector<double> z(n, 1.0);  // holds B_{l+1,end} while filling l
    for (int t = 0; t < n; ++t) {
        int l = cyc(end - t, n);
        if (d == Discipline::Exhaustive) {
            val[l] = joint_busy_period(l, w, z);
        } else {
            val[l] = m_.service[l].lst(w + m_.lambda * (1.0 - m_.batch.pgf(z)));
        }
        z[l] = val[l];
    }
    return val;
}

// Difference quotient (X(a) - X(b)) / (E(X) (b - a)): the LST of the
// two-argument past/residual decomposition of X. Removable singularity at
// a == b handled by a derivative limit.
double TransformEngine::pr_lst(const Dist& d, double a, double b) const {
    double scale = std::max(std::abs(a), std::abs(b));
    if (std::abs(b - a) < 1e-9 * std::max(1.0, scale)) {
        double h = 1e-5 / std::max(1.0, d.mean());
        auto f = [&](double x) { return d.lst(x); };
        return -one_sided_derivative(f, 0.5 * (a + b), h) / d.mean();
    }
    return (d.lst(a) - d.lst(b)) / (d.mean() * (b - a));
}

// ---------------------------------------------------------------------------
// Exhaustive laws of motion, unrolled backwards from the visit beginning of
// queue i. One step peels off the preceding switch-over (a multiplicative
// LST factor) and the preceding visit (a busy-period substitution in the
// argument); the argument contracts geometrically to all-ones for rho < 1.

PgfEval TransformEngine::lb_visit_exh(int i, std::vector<double> z) const {
    PgfEval out;
    double factor = 1.0;
    int cur = i;
    double prev_dev = 2.0;
    for (long step = 0; step < kUnrollCap; ++step) {
        double dev = max_dev_from_one(z);
        if (dev < kFixedPointTol || (dev < 1e-12 && dev >= prev_dev)) {
            out.value = factor;
            out.iterations = step;
            out.residual = dev;
            return out;
        }
        int prev = cyc(cur - 1, m_.n);
        factor *= m_.switchover[prev].lst(m_.lambda * (1.0 - m_.batch.pgf(z)));
        // Arrivals to the visited queue are absorbed in its busy periods,
        // during which the other queues keep accumulating marked arrivals.
        z[prev] = joint_busy_period(prev, 0.0, z);
        cur = prev;
        prev_dev = dev;
    }
    fail_numerical("law-of-motion unrolling did not converge");
}

double TransformEngine::lc_visit_exh(int i, std::vector<double> z) const {
    z[i] = joint_busy_period(i, 0.0, z);
    return lb_visit_exh(i, std::move(z)).value;
}

// PGF at a service beginning of queue i, from the visit boundary PGFs via
// the long-run balance of service beginnings and queue-i arrivals.
double TransformEngine::lb_begin_service_exh(int i, const std::vector<double>& z) const {
    double num = z[i] * (lc_visit_exh(i, z) - lb_visit_exh(i, z).value);
    double om = m_.lambda * (1.0 - m_.batch.pgf(z));
    double den = m_.lambda_q[i] * m_.mean_cycle * (m_.service[i].lst(om) - z[i]);
    return num / den;
}

double TransformEngine::stationary_queue_pgf(const std::vector<double>& z) const {
    if (static_cast<int>(z.size()) != m_.n) fail_invalid("PGF argument length mismatch");
    if (max_dev_from_one(z) < kFixedPointTol) return 1.0;
    double om = m_.lambda * (1.0 - m_.batch.pgf(z));
    double total = 0.0;
    for (int i = 0; i < m_.n; ++i) {
        if (m_.lambda_q[i] <= 0.0) continue;
        // Service-completion PGF of queue i, with the z_i factors arranged
        // to avoid dividing by z_i = 0.
        double bt = m_.service[i].lst(om);
        double comp = (lc_visit_exh(i, z) - lb_visit_exh(i, z).value) * bt /
                      (m_.lambda_q[i] * m_.mean_cycle * (bt - z[i]));
        total += m_.lambda_q[i] * (1.0 - z[i]) * comp;
    }
    return total / om;
}

double TransformEngine::stationary_queue_pgf_mixture(const std::vector<double>& z) const {
    if (static_cast<int>(z.size()) != m_.n) fail_invalid("PGF argument length mismatch");
    if (max_dev_from_one(z) < kFixedPointTol) return 1.0;
    double om = m_.lambda * (1.0 - m_.batch.pgf(z));
    double total = 0.0;
    for (int i = 0; i < m_.n; ++i) {
        // Time in queue i's visit period, weighted by the PGF seen at an
        // arbitrary epoch of an ongoing service.
        if (m_.lambda_q[i] > 0.0) {
            double lbb = lb_begin_service_exh(i, z);
            total += m_.lambda_q[i] * m_.mean_cycle * lbb *
                     (1.0 - m_.service[i].lst(om)) / om;
        }
        // Time in the switch-over after queue i.
        if (m_.switchover[i].mean() > 0.0) {
            total += lc_visit_exh(i, z) * (1.0 - m_.switchover[i].lst(om)) / om;
        }
    }
    return total / m_.mean_cycle;
}

// ---------------------------------------------------------------------------
// Locally-gated laws of motion. z has n + 1 coordinates; the last counts
// customers behind the gate of the queue whose visit boundary is taken.

PgfEval TransformEngine::lb_visit_lg(int i, std::vector<double> z) const {
    PgfEval out;
    const int n = m_.n;
    double factor = 1.0;
    int cur = i;
    double prev_dev = 2.0;
    for (long step = 0; step < kUnrollCap; ++step) {
        double dev = max_dev_from_one(z);
        if (dev < kFixedPointTol || (dev < 1e-12 && dev >= prev_dev)) {
            out.value = factor;
            out.iterations = step;
            out.residual = dev;
            return out;
        }
        int prev = cyc(cur - 1, n);
        double kz = kpgf(z);
        factor *= m_.switchover[prev].lst(m_.lambda * (1.0 - kz));
        // Stepping to the previous visit beginning: the gated customers of
        // queue prev are exactly its pre-visit content, so the gate
        // coordinate inherits z[prev] and the substitution argument equals
        // the current batch PGF value.
        z[n] = z[prev];
        z[prev] = m_.service[prev].lst(m_.lambda * (1.0 - kz));
        cur = prev;
        prev_dev = dev;
    }
    fail_numerical("law-of-motion unrolling did not converge");
}

double TransformEngine::lc_visit_lg(int i, std::vector<double> z) const {
    const int n = m_.n;
    std::vector<double> arg(z.begin(), z.begin() + n);
    arg[i] = z[n];  // the gated customers finish service during the visit
    z[i] = m_.service[i].lst(m_.lambda * (1.0 - m_.batch.pgf(arg)));
    return lb_visit_lg(i, std::move(z)).value;
}

double TransformEngine::lb_begin_service_lg(int i, const std::vector<double>& z) const {
    const int n = m_.n;
    std::vector<double> arg(z.begin(), z.begin() + n);
    arg[i] = z[n];
    double num = z[i] * (lc_visit_lg(i, z) - lb_visit_lg(i, z).value);
    double den = m_.lambda_q[i] * m_.mean_cycle *
                 (m_.service[i].lst(m_.lambda * (1.0 - m_.batch.pgf(arg))) - z[i]);
    return num / den;
}

PgfEval TransformEngine::visit_begin_pgf(int i, std::vector<double> z, Discipline d) const {
    if (d == Discipline::Exhaustive) {
        if (static_cast<int>(z.size()) != m_.n) fail_invalid("PGF argument length mismatch");
        return lb_visit_exh(i, std::move(z));
    }
    if (d == Discipline::LocallyGated) {
        if (static_cast<int>(z.size()) != m_.n + 1)
            fail_invalid("locally-gated PGF argument needs a gate coordinate");
        return lb_visit_lg(i, std::move(z));
    }
    fail_invalid("visit-beginning PGF is provided for exhaustive and locally-gated only");
}

// ---------------------------------------------------------------------------
// Batch sojourn-time LSTs. For a batch starting service at queue `start`
// and finishing at queue `end`, the conditioned transforms share the
// descendant vectors; Parts carries the two period-conditioned values
// without the batch-member product.

struct TransformEngine::Parts {
    double visit = 0.0;         // conditioned on the visit period (weight E(V))
    double sw = 0.0;            // conditioned on S_{start-1} (weight E(S_{start-1}))
    std::vector<double> bstar;  // per-queue member transforms (first n coords)
};

TransformEngine::Parts TransformEngine::parts_exh(int start, int end, double w) const {
    const int n = m_.n;
    Parts out;
    std::vector<double> chain;
    if (end != start) chain = descendant_chain(cyc(end - 1, n), w, Discipline::Exhaustive);
    // Descendants of everything served strictly before queue `end` starts.
    std::vector<double> before = (end == start)
                                     ? std::vector<double>(n, 1.0)
                                     : span_vector(chain, start, cyc(end - 1, n), n);
    out.bstar = before;
    out.bstar[end] = m_.service[end].lst(w);  // arrivals to the final queue excluded
    double wprime = w + m_.lambda * (1.0 - m_.batch.pgf(before));
    double om_star = m_.lambda * (1.0 - m_.batch.pgf(out.bstar));
    // Switch-overs crossed between the start and final visits, each grown
    // by the work it accumulates before queue `end` starts.
    double sw_chain = 1.0;
    for (int u = 0; u < cyc_dist(start, end, n); ++u) {
        int q = cyc(start + u, n);
        std::vector<double> tail = span_vector(chain, cyc(q + 1, n), cyc(end - 1, n), n);
        sw_chain *= m_.switchover[q].lst(w + m_.lambda * (1.0 - m_.batch.pgf(tail)));
    }
    if (m_.lambda_q[start] > 0.0) {
        double lbb = lb_begin_service_exh(start, out.bstar);
        out.visit = lbb * pr_lst(m_.service[start], om_star, wprime) * sw_chain /
                    out.bstar[start];
    }
    int prev = cyc(start - 1, n);
    if (m_.switchover[prev].mean() > 0.0) {
        double lbs = lc_visit_exh(prev, out.bstar);  // PGF entering S_{start-1}
        out.sw = lbs * pr_lst(m_.switchover[prev], om_star, wprime) * sw_chain;
    }
    return out;
}

TransformEngine::Parts TransformEngine::parts_lg(int start, int end, double w) const {
    const int n = m_.n;
    Parts out;
    int p = cyc(start - 1, n);  // the batch arrives during V_p or S_p
    std::vector<double> chain_before = descendant_chain(cyc(end - 1, n), w, Discipline::LocallyGated);
    std::vector<double> before = (end == start)
                                     ? std::vector<double>(n, 1.0)
                                     : span_vector(chain_before, start, cyc(end - 1, n), n);
    out.bstar = before;
    out.bstar.push_back(1.0);  // gate coordinate
    out.bstar[end] = m_.service[end].lst(w);
    double wprime = w + m_.lambda * (1.0 - m_.batch.pgf(before));
    double om_star = m_.lambda * (1.0 - kpgf(out.bstar));
    // Gate vector for the visit-period conditioning. Descendant marks stop
    // at queue end - 1: arrivals to queue `end` after the tagged epoch fall
    // behind the batch in FIFO order, so queue `end` itself carries only
    // its bare service transform. When p == end the batch finishes in the
    // next visit of p, so queue p's gated customers wrap a full cycle and
    // the behind-gate customers ahead of the batch add one service each.
    std::vector<double> gate(n + 1, 1.0);
    if (p != end) {
        for (int u = 0; u <= cyc_dist(p, cyc(end - 1, n), n); ++u) {
            int q = cyc(p + u, n);
            gate[q] = chain_before[q];
        }
        gate[end] = m_.service[end].lst(w);
    } else {
        for (int l = 0; l < n; ++l) gate[l] = chain_before[l];
        std::vector<double> center(chain_before);
        center[p] = 1.0;
        gate[p] = m_.service[p].lst(w + m_.lambda * (1.0 - m_.batch.pgf(center)));
        gate[n] = m_.service[p].lst(w);
    }
    // Switch chains: the visit conditioning also waits out S_p itself; a
    // batch completing at the arrival queue (p == end) crosses all n.
    auto switch_chain = [&](int from, int count) {
        double prod = 1.0;
        for (int u = 0; u < count; ++u) {
            int q = cyc(from + u, n);
            std::vector<double> tail = span_vector(chain_before, cyc(q + 1, n), cyc(end - 1, n), n);
            prod *= m_.switchover[q].lst(w + m_.lambda * (1.0 - m_.batch.pgf(tail)));
        }
        return prod;
    };
    double sw_visit = switch_chain(p, (p == end) ? n : cyc_dist(p, cyc(end - 1, n), n) + 1);
    double sw_switch = switch_chain(start, cyc_dist(start, end, n));
    if (m_.lambda_q[p] > 0.0) {
        double lbb = lb_begin_service_lg(p, gate);
        std::vector<double> garg(gate.begin(), gate.begin() + n);
        garg[p] = gate[n];
        double om_g = m_.lambda * (1.0 - m_.batch.pgf(garg));
        out.visit = lbb * pr_lst(m_.service[p], om_g, wprime) * sw_visit / gate[p];
    }
    if (m_.switchover[p].mean() > 0.0) {
        std::vector<double> zs = out.bstar;
        zs[n] = zs[p];  // entering S_p, queue p's gate holds its leftover content
        double lbs = lc_visit_lg(p, zs);
        out.sw = lbs * pr_lst(m_.switchover[p], om_star, wprime) * sw_switch;
    }
    return out;
}

TransformEngine::Parts TransformEngine::parts(int start, int end, double w, Discipline d) const {
    if (d == Discipline::Exhaustive) return parts_exh(start, end, w);
    if (d == Discipline::LocallyGated) return parts_lg(start, end, w);
    fail_invalid("sojourn LST for globally-gated lives in its own module");
}

namespace {

double member_product(const std::vector<double>& bstar, const std::vector<int>& k, int n) {
    double prod = 1.0;
    for (int l = 0; l < n; ++l)
        for (int c = 0; c < k[l]; ++c) prod *= bstar[l];
    return prod;
}

void check_batch(const std::vector<int>& k, int n) {
    if (static_cast<int>(k.size()) != n) fail_invalid("batch vector length mismatch");
    bool any = false;
    for (int c : k) {
        if (c < 0) fail_invalid("negative batch component");
        if (c > 0) any = true;
    }
    if (!any) fail_invalid("batch sojourn of the empty batch is undefined");
}

}  // namespace

double TransformEngine::conditioned_sojourn_lst(const std::vector<int>& k, PeriodKind period,
                                                int start, double w, Discipline d) const {
    check_batch(k, m_.n);
    if (w == 0.0) return 1.0;
    int end = m_.batch.completion_end(start, k);
    Parts p = parts(start, end, w, d);
    double prod = member_product(p.bstar, k, m_.n);
    if (period == PeriodKind::Visit) {
        int vq = (d == Discipline::Exhaustive) ? start : cyc(start - 1, m_.n);
        if (m_.lambda_q[vq] <= 0.0)
            fail_invalid("conditioning on a zero-length visit period");
        return p.visit * prod;
    }
    if (m_.switchover[cyc(start - 1, m_.n)].mean() <= 0.0)
        fail_invalid("conditioning on a zero-length switch-over period");
    return p.sw * prod;
}

double TransformEngine::sojourn_lst(const std::vector<int>& k, double w, Discipline d) const {
    check_batch(k, m_.n);
    if (w == 0.0) return 1.0;
    const int n = m_.n;
    double total = 0.0;
    for (int start = 0; start < n; ++start) {
        int end = m_.batch.completion_end(start, k);
        Parts p = parts(start, end, w, d);
        double prod = member_product(p.bstar, k, n);
        int vq = (d == Discipline::Exhaustive) ? start : cyc(start - 1, n);
        double ev = m_.rho_q[vq] * m_.mean_cycle;
        double es = m_.switchover[cyc(start - 1, n)].mean();
        total += (ev * p.visit + es * p.sw) * prod;
    }
    return total / m_.mean_cycle;
}

double TransformEngine::sojourn_lst_arbitrary(double w, Discipline d) const {
    if (w == 0.0) return 1.0;
    const int n = m_.n;
    double total = 0.0;
    for (int start = 0; start < n; ++start) {
        int vq = (d == Discipline::Exhaustive) ? start : cyc(start - 1, n);
        double ev = m_.rho_q[vq] * m_.mean_cycle;
        double es = m_.switchover[cyc(start - 1, n)].mean();
        for (int end = 0; end < n; ++end) {
            double pk = m_.batch.completion_probability(start, end);
            if (pk <= 0.0) continue;
            Parts p = parts(start, end, w, d);
            std::vector<double> head(p.bstar.begin(), p.bstar.begin() + n);
            double cond = m_.batch.conditional_pgf(head, start, end);
            total += (ev * p.visit + es * p.sw) * pk * cond;
        }
    }
    return total / m_.mean_cycle;
}

}  // namespace polling
