#include "polling/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <deque>
#include <fstream>
#include <future>
#include <limits>
#include <thread>

#include <boost/math/distributions/students_t.hpp>

#include "polling/cyclic.hpp"

namespace polling {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::mt19937_64 make_stream(std::uint64_t master, int replication, int stream) {
    // Independent streams per (replication, purpose) via a counter hash.
    return std::mt19937_64(
        splitmix64(master ^ splitmix64((static_cast<std::uint64_t>(replication) << 8) | stream)));
}

struct TraceRow {
    long batch_id;
    double arrival;
    double completion;
    int last_queue;
};

// One replication's raw sums; aggregated across replications afterwards.
struct RepResult {
    double mean_T = 0.0;
    double mean_C = 0.0;
    std::vector<double> mean_W;
    std::vector<double> mean_L;
    std::vector<double> mean_L_content;
    std::vector<double> busy_fraction;
    std::vector<double> empirical_lst;
    std::vector<double> visit_pgf;
    std::vector<double> class_T;      // per support point
    std::vector<long> class_count;
    std::vector<TraceRow> trace;
};

struct BatchMeta {
    double arrival = 0.0;
    int remaining = 0;
    int kidx = 0;
};

struct Customer {
    double arrival;
    long batch;
};

class Replication {
public:
    Replication(const PollingModel& m, Discipline d, const SimConfig& cfg, int rep)
        : m_(m), d_(d), cfg_(cfg),
          rng_arrival_(make_stream(cfg.seed, rep, 0)),
          rng_batch_(make_stream(cfg.seed, rep, 1)),
          rng_service_(make_stream(cfg.seed, rep, 2)),
          rng_switch_(make_stream(cfg.seed, rep, 3)),
          want_trace_(!cfg.trace_path.empty()) {
        const auto& entries = m.batch.entries();
        cum_.reserve(entries.size());
        double acc = 0.0;
        for (const auto& e : entries) {
            acc += e.p;
            cum_.push_back(acc);
        }
        cum_.back() = 1.0;
    }

    RepResult run() {
        const int n = m_.n;
        const long target = cfg_.batches_per_replication;
        warm_index_ = static_cast<long>(cfg_.warmup_fraction * target);
        metas_.resize(target);
        queues_.assign(n, {});
        wait_area_.assign(n, 0.0);
        content_area_.assign(n, 0.0);
        busy_time_.assign(n, 0.0);
        wait_sum_.assign(n, 0.0);
        wait_count_.assign(n, 0);
        lst_sum_.assign(cfg_.lst_probes.size(), 0.0);
        pgf_sum_.assign(cfg_.pgf_probes.size(), 0.0);
        class_sum_.assign(cum_.size(), 0.0);
        class_count_.assign(cum_.size(), 0);
        gates_.assign(n, 0);
        schedule_next_arrival();

        int q = 0;
        while (completed_ < target) {
            begin_visit(q);
            long to_serve = served_quota(q);
            if (d_ == Discipline::Exhaustive) {
                while (!queues_[q].empty()) serve_one(q);
            } else {
                for (long s = 0; s < to_serve; ++s) serve_one(q);
            }
            double sw = m_.switchover[q].sample(rng_switch_);
            advance_to(now_ + sw);
            q = cyc(q + 1, n);
        }
        return finalize();
    }

private:
    void schedule_next_arrival() {
        if (generated_ >= cfg_.batches_per_replication) {
            next_arrival_ = std::numeric_limits<double>::infinity();
            return;
        }
        next_arrival_ += std::exponential_distribution<double>(m_.lambda)(rng_arrival_);
    }

    int draw_batch_index() {
        double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng_batch_);
        return static_cast<int>(std::lower_bound(cum_.begin(), cum_.end(), u) - cum_.begin());
    }

    // Accumulate the piecewise-constant queue-length integrals up to t.
    void integrate_to(double t) {
        double from = std::max(last_update_, warm_time_);
        if (t > from) {
            double seg = t - from;
            for (int i = 0; i < m_.n; ++i) {
                double waiting = static_cast<double>(queues_[i].size());
                wait_area_[i] += waiting * seg;
                content_area_[i] += (waiting + (in_service_ == i ? 1.0 : 0.0)) * seg;
                if (in_service_ == i) busy_time_[i] += seg;
            }
        }
        last_update_ = t;
    }

    void admit_batch() {
        long id = generated_++;
        int kidx = draw_batch_index();
        const auto& k = m_.batch.entries()[kidx].k;
        BatchMeta& meta = metas_[id];
        meta.arrival = next_arrival_;
        meta.kidx = kidx;
        for (int i = 0; i < m_.n; ++i) {
            meta.remaining += k[i];
            for (int c = 0; c < k[i]; ++c) queues_[i].push_back({next_arrival_, id});
        }
        if (id == warm_index_) warm_time_ = next_arrival_;
        schedule_next_arrival();
    }

    void advance_to(double t) {
        while (next_arrival_ <= t) {
            integrate_to(next_arrival_);
            admit_batch();
        }
        integrate_to(t);
        now_ = t;
    }

    void begin_visit(int q) {
        advance_to(now_);
        if (d_ == Discipline::LocallyGated) {
            gates_[q] = static_cast<long>(queues_[q].size());
        } else if (d_ == Discipline::GloballyGated && q == 0) {
            for (int i = 0; i < m_.n; ++i) gates_[i] = static_cast<long>(queues_[i].size());
        }
        if (q == 0) record_cycle_point();
    }

    long served_quota(int q) const {
        if (d_ == Discipline::Exhaustive) return 0;  // serves until empty instead
        return gates_[q];
    }

    void record_cycle_point() {
        if (warm_time_ == std::numeric_limits<double>::infinity() || now_ < warm_time_) return;
        if (cycle_count_ == 0) cycle_first_ = now_;
        cycle_last_ = now_;
        ++cycle_count_;
        for (std::size_t p = 0; p < cfg_.pgf_probes.size(); ++p) {
            const auto& z = cfg_.pgf_probes[p];
            double v = 1.0;
            for (int i = 0; i < m_.n; ++i)
                v *= std::pow(z[i], static_cast<double>(queues_[i].size()));
            pgf_sum_[p] += v;
        }
        pgf_count_ += cfg_.pgf_probes.empty() ? 0 : 1;
    }

    void serve_one(int q) {
        Customer cust = queues_[q].front();
        queues_[q].pop_front();
        if (d_ != Discipline::Exhaustive) --gates_[q];
        if (cust.batch >= warm_index_) {
            wait_sum_[q] += now_ - cust.arrival;
            ++wait_count_[q];
        }
        double dur = m_.service[q].sample(rng_service_);
        in_service_ = q;
        advance_to(now_ + dur);
        in_service_ = -1;
        BatchMeta& meta = metas_[cust.batch];
        if (--meta.remaining == 0) {
            ++completed_;
            if (cust.batch >= warm_index_) {
                double sojourn = now_ - meta.arrival;
                sojourn_sum_ += sojourn;
                ++sojourn_count_;
                for (std::size_t p = 0; p < cfg_.lst_probes.size(); ++p)
                    lst_sum_[p] += std::exp(-cfg_.lst_probes[p] * sojourn);
                class_sum_[meta.kidx] += sojourn;
                ++class_count_[meta.kidx];
            }
            if (want_trace_)
                trace_.push_back({cust.batch, meta.arrival, now_, q});
        }
    }

    RepResult finalize() {
        RepResult r;
        const int n = m_.n;
        double elapsed = last_update_ - warm_time_;
        r.mean_T = sojourn_sum_ / static_cast<double>(sojourn_count_);
        r.mean_C = cycle_count_ > 1 ? (cycle_last_ - cycle_first_) / (cycle_count_ - 1) : 0.0;
        r.mean_W.resize(n);
        r.mean_L.resize(n);
        r.mean_L_content.resize(n);
        r.busy_fraction.resize(n);
        for (int i = 0; i < n; ++i) {
            r.mean_W[i] = wait_count_[i] > 0 ? wait_sum_[i] / wait_count_[i] : 0.0;
            r.mean_L[i] = wait_area_[i] / elapsed;
            r.mean_L_content[i] = content_area_[i] / elapsed;
            r.busy_fraction[i] = busy_time_[i] / elapsed;
        }
        r.empirical_lst.resize(lst_sum_.size());
        for (std::size_t p = 0; p < lst_sum_.size(); ++p)
            r.empirical_lst[p] = lst_sum_[p] / static_cast<double>(sojourn_count_);
        r.visit_pgf.resize(pgf_sum_.size());
        for (std::size_t p = 0; p < pgf_sum_.size(); ++p)
            r.visit_pgf[p] = cycle_count_ > 0 ? pgf_sum_[p] / cycle_count_ : 0.0;
        r.class_T.resize(class_sum_.size());
        r.class_count = class_count_;
        for (std::size_t c = 0; c < class_sum_.size(); ++c)
            r.class_T[c] = class_count_[c] > 0 ? class_sum_[c] / class_count_[c] : 0.0;
        r.trace = std::move(trace_);
        return r;
    }

    const PollingModel& m_;
    Discipline d_;
    const SimConfig& cfg_;
    std::mt19937_64 rng_arrival_, rng_batch_, rng_service_, rng_switch_;
    bool want_trace_;

    std::vector<double> cum_;
    std::vector<BatchMeta> metas_;
    std::vector<std::deque<Customer>> queues_;
    std::vector<long> gates_;

    double now_ = 0.0;
    double next_arrival_ = 0.0;
    long generated_ = 0;
    long completed_ = 0;
    int in_service_ = -1;
    long warm_index_ = 0;
    double warm_time_ = std::numeric_limits<double>::infinity();
    double last_update_ = 0.0;

    std::vector<double> wait_area_, content_area_, busy_time_, wait_sum_;
    std::vector<long> wait_count_;
    double sojourn_sum_ = 0.0;
    long sojourn_count_ = 0;
    double cycle_first_ = 0.0, cycle_last_ = 0.0;
    long cycle_count_ = 0;
    long pgf_count_ = 0;
    std::vector<double> lst_sum_, pgf_sum_, class_sum_;
    std::vector<long> class_count_;
    std::vector<TraceRow> trace_;
};

CI summarize(const std::vector<double>& values, double tq) {
    CI ci;
    int r = static_cast<int>(values.size());
    for (double v : values) ci.mean += v;
    ci.mean /= r;
    double ss = 0.0;
    for (double v : values) ss += (v - ci.mean) * (v - ci.mean);
    double sd = r > 1 ? std::sqrt(ss / (r - 1)) : 0.0;
    ci.half = tq * sd / std::sqrt(static_cast<double>(r));
    return ci;
}

}  // namespace

SimEstimate simulate(const PollingModel& m, Discipline d, const SimConfig& cfg) {
    if (!m.has_sampling())
        fail_invalid("model has a moments-only distribution; cannot simulate");
    if (cfg.replications < 2) fail_invalid("need at least two replications");
    if (cfg.warmup_fraction < 0.0 || cfg.warmup_fraction >= 1.0)
        fail_invalid("warmup fraction must lie in [0, 1)");
    for (const auto& z : cfg.pgf_probes)
        if (static_cast<int>(z.size()) != m.n) fail_invalid("PGF probe length mismatch");

    const int R = cfg.replications;
    std::vector<RepResult> results(R);
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::future<void>> tasks;
    std::atomic<int> next{0};
    for (unsigned t = 0; t < std::min<unsigned>(workers, R); ++t) {
        tasks.push_back(std::async(std::launch::async, [&] {
            for (int rep = next.fetch_add(1); rep < R; rep = next.fetch_add(1))
                results[rep] = Replication(m, d, cfg, rep).run();
        }));
    }
    for (auto& t : tasks) t.get();

    boost::math::students_t tdist(R - 1);
    double tq = boost::math::quantile(tdist, 0.995);

    SimEstimate out;
    auto gather = [&](auto accessor) {
        std::vector<double> v(R);
        for (int r = 0; r < R; ++r) v[r] = accessor(results[r]);
        return summarize(v, tq);
    };
    out.mean_T = gather([](const RepResult& r) { return r.mean_T; });
    out.mean_C = gather([](const RepResult& r) { return r.mean_C; });
    for (int i = 0; i < m.n; ++i) {
        out.mean_W.push_back(gather([&](const RepResult& r) { return r.mean_W[i]; }));
        out.mean_L.push_back(gather([&](const RepResult& r) { return r.mean_L[i]; }));
        out.mean_L_content.push_back(
            gather([&](const RepResult& r) { return r.mean_L_content[i]; }));
        out.busy_fraction.push_back(
            gather([&](const RepResult& r) { return r.busy_fraction[i]; }));
    }
    for (std::size_t p = 0; p < cfg.lst_probes.size(); ++p)
        out.empirical_lst.push_back(
            gather([&](const RepResult& r) { return r.empirical_lst[p]; }));
    for (std::size_t p = 0; p < cfg.pgf_probes.size(); ++p)
        out.visit_pgf.push_back(gather([&](const RepResult& r) { return r.visit_pgf[p]; }));
    for (std::size_t c = 0; c < m.batch.entries().size(); ++c) {
        out.class_k.push_back(m.batch.entries()[c].k);
        out.class_T.push_back(gather([&](const RepResult& r) { return r.class_T[c]; }));
    }

    if (!cfg.trace_path.empty()) {
        std::ofstream tr(cfg.trace_path);
        if (!tr) fail_invalid("cannot open trace file: " + cfg.trace_path);
        tr << "replication,batch_id,arrival_time,completion_time,sojourn,last_queue\n";
        char buf[160];
        for (int r = 0; r < R; ++r) {
            for (const TraceRow& row : results[r].trace) {
                std::snprintf(buf, sizeof(buf), "%d,%ld,%.12g,%.12g,%.12g,%d\n", r,
                              row.batch_id, row.arrival, row.completion,
                              row.completion - row.arrival, row.last_queue + 1);
                tr << buf;
            }
        }
    }
    return out;
}

}  // namespace polling
